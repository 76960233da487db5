//! The common-hollyhock concept over four features, in every family.
//!
//! Features: `x1` deciduous foliage, `x2` heart-shaped leaves, `x3` large
//! flowers, `x4` light green stem. The concept has exactly five positive
//! instances, listed by [`positives`].

use num_rational::BigRational;

use super::{
    BatchNorm, Bnn, BnnBlock, BnnInput, BnnOutput, BoostedTree, Classifier, CnfFormula,
    DecisionList, DecisionTree, DnfFormula, Instance, Mlp, Neuron, Node, RandomForest, Rule, Term,
    Var,
};

pub const N: usize = 4;

/// `(1,0,1,1), (1,1,0,0), (1,1,0,1), (1,1,1,0), (1,1,1,1)`.
pub fn positives() -> Vec<Instance> {
    ["1011", "1100", "1101", "1110", "1111"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

fn leaf(c: u8) -> Node {
    Node::Leaf(c == 1)
}

/// `lo` on 0, `hi` on 1.
fn node(var: usize, lo: Node, hi: Node) -> Node {
    Node::decision(Var::new(var), lo, hi)
}

/// Decision tree rooted at `x2`.
pub fn tree() -> DecisionTree {
    DecisionTree::new(
        N,
        node(
            2,
            node(1, leaf(0), node(3, leaf(0), node(4, leaf(0), leaf(1)))),
            node(1, leaf(0), leaf(1)),
        ),
    )
}

/// Three-tree forest.
pub fn forest() -> RandomForest {
    let t1 = node(
        1,
        leaf(0),
        node(2, leaf(0), node(3, leaf(1), node(4, leaf(0), leaf(1)))),
    );
    let t2 = node(
        2,
        node(1, leaf(0), node(3, leaf(0), node(4, leaf(0), leaf(1)))),
        node(3, node(1, leaf(0), leaf(1)), node(1, leaf(0), leaf(1))),
    );
    let t3 = node(3, leaf(0), node(2, node(4, leaf(0), leaf(1)), leaf(1)));
    RandomForest::new(
        N,
        [t1, t2, t3]
            .into_iter()
            .map(|r| DecisionTree::new(N, r))
            .collect(),
    )
}

/// Three trees weighted 1/2, 1/4, 1/4.
pub fn boosted() -> BoostedTree {
    let t1 = node(1, leaf(0), node(2, node(3, leaf(0), leaf(1)), leaf(1)));
    let t2 = node(
        2,
        node(3, leaf(0), node(4, leaf(0), leaf(1))),
        node(1, leaf(0), leaf(1)),
    );
    let t3 = node(1, leaf(0), node(3, leaf(0), node(4, leaf(0), leaf(1))));
    let w = |d: i64| BigRational::new(1.into(), d.into());
    BoostedTree::new(
        N,
        vec![
            (DecisionTree::new(N, t1), w(2)),
            (DecisionTree::new(N, t2), w(4)),
            (DecisionTree::new(N, t3), w(4)),
        ],
    )
}

/// Three hidden threshold units computing `x1`, `x2 ∨ x3`, `x2 ∨ x4`, and
/// an output unit requiring all three.
pub fn perceptron() -> Mlp {
    Mlp::new(
        N,
        vec![
            vec![
                Neuron::from_ints(&[1, 0, 0, 0], -1),
                Neuron::from_ints(&[0, 1, 1, 0], -1),
                Neuron::from_ints(&[0, 1, 0, 1], -1),
            ],
            vec![Neuron::from_ints(&[1, 1, 1], -3)],
        ],
    )
}

/// One internal block with a hidden unit per positive instance, fed with
/// the plain `2x − 1` encoding.
pub fn bnn() -> Bnn {
    let half = |num: i64| BigRational::new(num.into(), 2.into());
    let block = BnnBlock {
        weights: vec![
            vec![1, -1, 1, 1],
            vec![1, 1, -1, -1],
            vec![1, 1, -1, 1],
            vec![1, 1, 1, -1],
            vec![1, 1, 1, 1],
        ],
        bias: vec![half(-7); 5],
        norm: vec![BatchNorm::identity(); 5],
    };
    let output = BnnOutput {
        weights: vec![vec![-1; 5], vec![1; 5]],
        bias: vec![half(-9), half(10)],
    };
    Bnn::new(N, BnnInput::Signed, vec![block], output)
}

/// `x1 ∧ (x2 ∨ x3) ∧ (x2 ∨ x4)`.
pub fn cnf() -> CnfFormula {
    CnfFormula::from_dimacs(N, &[&[1], &[2, 3], &[2, 4]])
}

pub fn dnf() -> DnfFormula {
    let t = |lits: &[i64]| Term::from_dimacs(lits).unwrap();
    DnfFormula::new(
        N,
        vec![
            t(&[1, 2, -3]),
            t(&[1, 2, 3, 4]),
            t(&[1, 2, -4]),
            t(&[1, -2, 3, 4]),
        ],
    )
}

/// `⟨x1 ∧ x2, 1⟩, ⟨¬x1, 0⟩, ⟨x3 ∧ x4, 1⟩, ⟨⊤, 0⟩`.
pub fn decision_list() -> DecisionList {
    let t = |lits: &[i64]| Term::from_dimacs(lits).unwrap();
    DecisionList::new(
        N,
        vec![
            Rule::new(t(&[1, 2]), true),
            Rule::new(t(&[-1]), false),
            Rule::new(t(&[3, 4]), true),
            Rule::new(Term::top(), false),
        ],
    )
}

/// Every representation above, tree first.
pub fn all() -> Vec<Classifier> {
    vec![
        Classifier::Tree(tree()),
        Classifier::Forest(forest()),
        Classifier::Boosted(boosted()),
        Classifier::Mlp(perceptron()),
        Classifier::Bnn(bnn()),
        Classifier::Cnf(cnf()),
        Classifier::Dnf(dnf()),
        Classifier::List(decision_list()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_representation_matches_the_positive_list() {
        let positives = positives();
        for c in all() {
            assert!(
                c.validate().is_empty(),
                "{}: {:?}",
                c.family(),
                c.validate()
            );
            let compiled = c.compile().unwrap();
            for i in 0..16 {
                let x = Instance::from_index(N, i);
                let expected = positives.contains(&x);
                assert_eq!(c.evaluate(&x).unwrap(), expected, "{} on {x}", c.family());
                assert_eq!(
                    compiled.evaluate(x.bits()),
                    expected,
                    "compiled {} on {x}",
                    c.family()
                );
            }
        }
    }

    #[test]
    fn spot_values() {
        assert!(tree().evaluate(&"1111".parse().unwrap()));
        assert!(!forest().evaluate(&"0000".parse().unwrap()));
        assert!(!bnn().evaluate(&"0111".parse().unwrap()));
    }
}
