//! Equivalence-preserving translations out of CNF.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::model::{
    BatchNorm, Bnn, BnnBlock, BnnInput, BnnOutput, BoostedTree, Clause, CnfFormula, DecisionList,
    DecisionTree, DnfFormula, Mlp, Neuron, Node, RandomForest, Rule, Term,
};

/// Drops tautologous clauses; returns the reduced formula and how many were
/// removed.
pub fn strip_valid_clauses(phi: &CnfFormula) -> (CnfFormula, usize) {
    let kept: Vec<Clause> = phi
        .clauses()
        .iter()
        .filter(|c| !c.is_valid())
        .cloned()
        .collect();
    let removed = phi.len() - kept.len();
    (CnfFormula::new(phi.n(), kept), removed)
}

fn reject_valid(phi: &CnfFormula) -> Result<()> {
    match phi.clauses().iter().position(Clause::is_valid) {
        Some(i) => Err(Error::ValidClause { index: i + 1 }),
        None => Ok(()),
    }
}

/// One `⟨¬δ, 0⟩` rule per clause, then `⟨⊤, 1⟩`.
pub fn cnf_to_decision_list(phi: &CnfFormula) -> DecisionList {
    let mut rules: Vec<Rule> = phi
        .clauses()
        .iter()
        .map(Clause::negated)
        .filter(Term::is_satisfiable)
        .map(|t| Rule::new(t, false))
        .collect();
    rules.push(Rule::new(Term::top(), true));
    DecisionList::new(phi.n(), rules)
}

/// A chain testing the literals in order; each satisfied literal exits to
/// a 1-leaf, falsifying them all reaches a 0-leaf.
pub fn clause_to_comb_tree(clause: &Clause, n: usize) -> DecisionTree {
    if clause.is_valid() {
        return DecisionTree::constant(n, true);
    }
    let root = clause
        .literals()
        .iter()
        .rev()
        .fold(Node::Leaf(false), |rest, l| {
            if l.positive {
                Node::ite(l.var, Node::Leaf(true), rest)
            } else {
                Node::ite(l.var, rest, Node::Leaf(true))
            }
        });
    DecisionTree::new(n, root)
}

/// `k` comb trees and `k − 1` constant-0 trees: a strict majority needs every
/// comb tree.
pub fn cnf_to_random_forest(phi: &CnfFormula) -> RandomForest {
    let n = phi.n();
    if phi.is_empty() {
        return RandomForest::new(n, vec![DecisionTree::constant(n, true)]);
    }
    let mut trees: Vec<DecisionTree> = phi
        .clauses()
        .iter()
        .map(|c| clause_to_comb_tree(c, n))
        .collect();
    trees.extend((1..phi.len()).map(|_| DecisionTree::constant(n, false)));
    RandomForest::new(n, trees)
}

/// Same trees, each weighted `1/m`.
pub fn rf_to_boosted_tree(forest: &RandomForest) -> Result<BoostedTree> {
    let m = forest.trees().len();
    if m == 0 {
        return Err(Error::EmptyEnsemble);
    }
    let w = BigRational::new(1.into(), m.into());
    Ok(BoostedTree::new(
        forest.n(),
        forest
            .trees()
            .iter()
            .map(|t| (t.clone(), w.clone()))
            .collect(),
    ))
}

/// One hidden unit per clause firing iff the clause holds, and an output
/// unit firing iff all of them do.
pub fn cnf_to_mlp(phi: &CnfFormula) -> Result<Mlp> {
    reject_valid(phi)?;
    let n = phi.n();
    let hidden: Vec<Neuron> = phi
        .clauses()
        .iter()
        .map(|c| {
            let mut w = vec![0i64; n];
            let mut negatives = 0;
            for l in c.literals() {
                if l.positive {
                    w[l.var.idx()] = 1;
                } else {
                    w[l.var.idx()] = -1;
                    negatives += 1;
                }
            }
            Neuron::from_ints(&w, negatives - 1)
        })
        .collect();
    let k = hidden.len();
    let output = Neuron::from_ints(&vec![1; k], -(k as i64));
    Ok(Mlp::new(n, vec![hidden, vec![output]]))
}

/// A single block over the duplicated encoding whose unit `i` outputs +1
/// iff clause `i` is falsified, then an output block preferring class 2 iff
/// no unit does.
pub fn cnf_to_bnn(phi: &CnfFormula) -> Result<Bnn> {
    reject_valid(phi)?;
    if phi.is_empty() {
        return Err(Error::EmptyCnf);
    }
    let n = phi.n();
    let k = phi.len();
    let int = |v: i64| BigRational::from_integer(v.into());
    let mut weights = Vec::with_capacity(k);
    let mut bias = Vec::with_capacity(k);
    for c in phi.clauses() {
        let mut row = Vec::with_capacity(2 * n);
        for j in 0..n {
            let pair = match c.literals().iter().find(|l| l.var.idx() == j) {
                None => [-1, 1],
                Some(l) if l.positive => [-1, -1],
                Some(_) => [1, 1],
            };
            row.extend(pair);
        }
        weights.push(row);
        bias.push(int(1 - 2 * c.len() as i64));
    }
    let block = BnnBlock {
        weights,
        bias,
        norm: vec![BatchNorm::identity(); k],
    };
    let output = BnnOutput {
        weights: vec![vec![1; k], vec![-1; k]],
        bias: vec![int(2 * k as i64), int(1)],
    };
    Ok(Bnn::new(2 * n, BnnInput::Duplicated, vec![block], output))
}

/// De Morgan: one negated term per clause.
pub fn cnf_negation_to_dnf(phi: &CnfFormula) -> DnfFormula {
    DnfFormula::new(phi.n(), phi.clauses().iter().map(Clause::negated).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Classifier, Instance, Literal};

    fn agree(phi: &CnfFormula, c: &Classifier) {
        assert!(c.validate().is_empty(), "{:?}", c.validate());
        for i in 0..1u64 << phi.n() {
            let x = Instance::from_index(phi.n(), i);
            assert_eq!(
                c.evaluate(&x).unwrap(),
                phi.evaluate(&x),
                "{} on {x}",
                c.family()
            );
        }
    }

    #[test]
    fn decision_list_rules() {
        let phi = CnfFormula::from_dimacs(3, &[&[1, 2], &[-1, 3]]);
        let l = cnf_to_decision_list(&phi);
        let t = |lits: &[i64]| Term::from_dimacs(lits).unwrap();
        assert_eq!(
            l.rules(),
            [
                Rule::new(t(&[-1, -2]), false),
                Rule::new(t(&[1, -3]), false),
                Rule::new(Term::top(), true)
            ]
        );
        agree(&phi, &Classifier::List(l));
        let empty = CnfFormula::new(2, vec![]);
        assert_eq!(
            cnf_to_decision_list(&empty).rules(),
            [Rule::new(Term::top(), true)]
        );
        let bottom = CnfFormula::new(2, vec![Clause::default()]);
        agree(&bottom, &Classifier::List(cnf_to_decision_list(&bottom)));
    }

    #[test]
    fn forest_has_zero_padding() {
        let phi = CnfFormula::from_dimacs(2, &[&[1], &[-2]]);
        let f = cnf_to_random_forest(&phi);
        assert_eq!(f.trees().len(), 3);
        assert_eq!(f.trees()[2], DecisionTree::constant(2, false));
        agree(&phi, &Classifier::Forest(f.clone()));
        let b = rf_to_boosted_tree(&f).unwrap();
        assert_eq!(b.members()[0].1, BigRational::new(1.into(), 3.into()));
        agree(&phi, &Classifier::Boosted(b));
        assert_eq!(
            cnf_to_random_forest(&CnfFormula::from_dimacs(2, &[&[1, 2]]))
                .trees()
                .len(),
            1
        );
    }

    #[test]
    fn comb_tree_shape() {
        let t = clause_to_comb_tree(&Clause::from_dimacs(&[1, -2]), 2);
        assert_eq!(t.size(), 5);
        assert_eq!(
            clause_to_comb_tree(&Clause::default(), 2).root(),
            &Node::Leaf(false)
        );
    }

    #[test]
    fn perceptron_hidden_unit() {
        let phi = CnfFormula::from_dimacs(2, &[&[1, -2]]);
        let m = cnf_to_mlp(&phi).unwrap();
        assert_eq!(m.layers()[0][0], Neuron::from_ints(&[1, -1], 0));
        agree(&phi, &Classifier::Mlp(m));
        let top = cnf_to_mlp(&CnfFormula::new(2, vec![])).unwrap();
        assert!(top.evaluate(&"01".parse().unwrap()));
        assert!(matches!(
            cnf_to_mlp(&CnfFormula::from_dimacs(2, &[&[1, -1]])),
            Err(Error::ValidClause { index: 1 })
        ));
    }

    #[test]
    fn bnn_row_and_bias() {
        let phi = CnfFormula::from_dimacs(2, &[&[1, -2]]);
        let b = cnf_to_bnn(&phi).unwrap();
        assert_eq!(b.blocks()[0].weights[0], [-1, -1, 1, 1]);
        assert_eq!(
            b.blocks()[0].bias[0],
            BigRational::from_integer((-3).into())
        );
        agree(&phi, &Classifier::Bnn(b));
        assert!(matches!(
            cnf_to_bnn(&CnfFormula::new(2, vec![])),
            Err(Error::EmptyCnf)
        ));
    }

    #[test]
    fn negation_by_de_morgan() {
        let phi = CnfFormula::from_dimacs(2, &[&[1, -2]]);
        let d = cnf_negation_to_dnf(&phi);
        assert_eq!(
            d.terms(),
            [Term::new([Literal::neg(1), Literal::pos(2)]).unwrap()]
        );
        assert!(cnf_negation_to_dnf(&CnfFormula::new(2, vec![])).is_empty());
    }
}
