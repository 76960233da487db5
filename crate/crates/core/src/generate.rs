//! Seeded random models for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Clause, CnfFormula, DecisionTree, Instance, Literal, Node, Term, Var};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A read-once tree over `n` features with at most `max_nodes` nodes.
pub fn random_tree(n: usize, max_nodes: usize, rng: &mut impl Rng) -> DecisionTree {
    fn build(free: &mut Vec<Var>, budget: usize, rng: &mut impl Rng) -> Node {
        if budget < 3 || free.is_empty() {
            return Node::Leaf(rng.gen());
        }
        let pick = rng.gen_range(0..free.len());
        let var = free.swap_remove(pick);
        // Split the remaining budget into two odd parts.
        let half = rng.gen_range(0..=(budget - 3) / 2);
        let lo_budget = 2 * half + 1;
        let hi_budget = budget - 1 - lo_budget;
        let lo = build(free, lo_budget, rng);
        let hi = build(free, hi_budget, rng);
        free.push(var);
        Node::decision(var, lo, hi)
    }
    let budget = rng.gen_range(1..=max_nodes.max(1));
    let mut free: Vec<Var> = Var::range(n).collect();
    DecisionTree::new(n, build(&mut free, budget, rng))
}

/// `k` clauses of 1 to `max_len` literals over distinct features, so no
/// clause is valid.
pub fn random_cnf(n: usize, k: usize, max_len: usize, rng: &mut impl Rng) -> CnfFormula {
    let max_len = max_len.min(n).max(1);
    let clauses = (0..k)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            random_clause(n, len, rng)
        })
        .collect();
    CnfFormula::new(n, clauses)
}

/// `k` clauses of exactly three literals over distinct features.
pub fn random_3cnf(n: usize, k: usize, rng: &mut impl Rng) -> CnfFormula {
    assert!(n >= 3, "3-CNF needs three features");
    CnfFormula::new(n, (0..k).map(|_| random_clause(n, 3, rng)).collect())
}

fn random_clause(n: usize, len: usize, rng: &mut impl Rng) -> Clause {
    let vars: Vec<Var> = Var::range(n).collect();
    Clause::new(
        vars.choose_multiple(rng, len)
            .map(|&v| Literal::new(v, rng.gen())),
    )
}

/// A width-1 tree: `x_i = 0` exits to a leaf of alternating class, `x_i = 1`
/// moves on to `x_{i+1}`. Both classes hold a constant fraction of `B^n`.
pub fn chain_tree(n: usize) -> DecisionTree {
    assert!(n >= 1);
    let last = Var::new(n);
    let mut node = Node::decision(
        last,
        Node::Leaf(!n.is_multiple_of(2)),
        Node::Leaf(n.is_multiple_of(2)),
    );
    for i in (1..n).rev() {
        node = Node::decision(Var::new(i), Node::Leaf(i % 2 == 1), node);
    }
    DecisionTree::new(n, node)
}

pub fn random_instance(n: usize, rng: &mut impl Rng) -> Instance {
    Instance::new((0..n).map(|_| rng.gen()).collect())
}

/// A satisfiable term of up to `max_len` literals.
pub fn random_term(n: usize, max_len: usize, rng: &mut impl Rng) -> Term {
    let len = rng.gen_range(0..=max_len.min(n));
    random_clause(n, len, rng).negated()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Classifier;

    #[test]
    fn trees_are_read_once_and_bounded() {
        let mut r = rng(7);
        for _ in 0..200 {
            let t = random_tree(6, 31, &mut r);
            assert!(t.size() <= 31);
            assert!(Classifier::Tree(t).validate().is_empty());
        }
    }

    #[test]
    fn cnfs_have_no_valid_clause() {
        let mut r = rng(3);
        for _ in 0..100 {
            let phi = random_cnf(5, 8, 4, &mut r);
            assert!(!phi.has_valid_clause());
            assert!(phi.clauses().iter().all(|c| !c.is_empty() && c.len() <= 4));
        }
        assert!(random_3cnf(5, 4, &mut r)
            .clauses()
            .iter()
            .all(|c| c.len() == 3));
    }

    #[test]
    fn chain_tree_is_linear() {
        let t = chain_tree(60);
        assert_eq!(t.size(), 121);
        assert_eq!(t.depth(), 60);
        assert!(t.evaluate(&Instance::ones(60)));
    }

    #[test]
    fn same_seed_same_model() {
        assert_eq!(
            random_tree(5, 21, &mut rng(1)),
            random_tree(5, 21, &mut rng(1))
        );
    }
}
