//! Weighted minimum models and the pruning that keeps exactly the minimizers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::model::{DecisionTree, Instance, Node, Var};

/// Cost of setting a feature to 0 or to 1. Unlisted features cost nothing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightFn {
    costs: Vec<[u64; 2]>,
}

impl WeightFn {
    pub fn zero(n: usize) -> WeightFn {
        WeightFn {
            costs: vec![[0, 0]; n],
        }
    }

    /// One per feature set to 1.
    pub fn ones_count(n: usize) -> WeightFn {
        WeightFn {
            costs: vec![[0, 1]; n],
        }
    }

    /// One per feature differing from `x`.
    pub fn hamming(x: &Instance) -> WeightFn {
        WeightFn {
            costs: x
                .bits()
                .iter()
                .map(|&b| if b { [1, 0] } else { [0, 1] })
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.costs.len()
    }

    pub fn set(&mut self, var: Var, bit: bool, cost: u64) {
        self.costs[var.idx()][bit as usize] = cost;
    }

    pub fn cost(&self, var: Var, bit: bool) -> u64 {
        self.costs.get(var.idx()).map_or(0, |c| c[bit as usize])
    }

    fn cheapest(&self, idx: usize) -> u64 {
        self.costs.get(idx).map_or(0, |c| c[0].min(c[1]))
    }

    /// Cost above the cheapest choice for the feature.
    fn excess(&self, idx: usize, bit: bool) -> u64 {
        self.costs
            .get(idx)
            .map_or(0, |c| c[bit as usize] - c[0].min(c[1]))
    }

    pub fn of(&self, x: &Instance) -> u64 {
        Var::range(x.n()).map(|v| self.cost(v, x.get(v))).sum()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Cost {
    Finite(u64),
    Infinite,
}

impl Cost {
    pub fn finite(self) -> Option<u64> {
        match self {
            Cost::Finite(c) => Some(c),
            Cost::Infinite => None,
        }
    }
}

impl Add<u64> for Cost {
    type Output = Cost;

    fn add(self, rhs: u64) -> Cost {
        match self {
            Cost::Finite(c) => Cost::Finite(c + rhs),
            Cost::Infinite => Cost::Infinite,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(c) => write!(f, "{c}"),
            Cost::Infinite => f.write_str("∞"),
        }
    }
}

/// `f` over excess costs: the minimum extra cost of a model below `node`.
fn excess_min(node: &Node, w: &WeightFn) -> Cost {
    match node {
        Node::Leaf(true) => Cost::Finite(0),
        Node::Leaf(false) => Cost::Infinite,
        Node::Decision { var, lo, hi } => {
            let i = var.idx();
            (excess_min(lo, w) + w.excess(i, false)).min(excess_min(hi, w) + w.excess(i, true))
        }
    }
}

/// Minimum of `Σ_v w(v, x_v)` over the models `x ∈ B^n` of `tree`.
pub fn min_weight(tree: &DecisionTree, w: &WeightFn) -> Cost {
    let base: u64 = (0..tree.n()).map(|i| w.cheapest(i)).sum();
    excess_min(tree.root(), w) + base
}

/// Prunes every branch that cannot reach a minimum-weight model. Both
/// branches are kept when they tie.
pub fn optimize(tree: &DecisionTree, w: &WeightFn) -> Result<DecisionTree> {
    fn go(node: &Node, w: &WeightFn) -> (Node, Cost) {
        match node {
            Node::Leaf(c) => (
                Node::Leaf(*c),
                if *c { Cost::Finite(0) } else { Cost::Infinite },
            ),
            Node::Decision { var, lo, hi } => {
                let i = var.idx();
                let (lo, f0) = go(lo, w);
                let (hi, f1) = go(hi, w);
                let (f0, f1) = (f0 + w.excess(i, false), f1 + w.excess(i, true));
                match f0.cmp(&f1) {
                    Ordering::Less => (Node::decision(*var, lo, Node::Leaf(false)), f0),
                    Ordering::Greater => (Node::decision(*var, Node::Leaf(false), hi), f1),
                    Ordering::Equal => (Node::decision(*var, lo, hi), f0),
                }
            }
        }
    }
    let (root, cost) = go(tree.root(), w);
    if cost == Cost::Infinite {
        return Err(Error::InconsistentTree);
    }
    Ok(DecisionTree::new(tree.n(), root))
}
