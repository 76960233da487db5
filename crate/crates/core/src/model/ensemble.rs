use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DecisionTree, Instance};

/// A multiset of trees voting by strict majority.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RandomForest {
    n: usize,
    trees: Vec<DecisionTree>,
}

impl RandomForest {
    pub fn new(n: usize, trees: Vec<DecisionTree>) -> RandomForest {
        RandomForest { n, trees }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trees(&self) -> &[DecisionTree] {
        &self.trees
    }

    pub fn size(&self) -> usize {
        self.trees.iter().map(DecisionTree::size).sum()
    }

    /// 1 iff more than half of the trees say 1; exactly half is 0.
    pub fn evaluate(&self, x: &Instance) -> bool {
        let votes = self.trees.iter().filter(|t| t.evaluate(x)).count();
        2 * votes > self.trees.len()
    }
}

/// Trees with convex weights voting by weighted strict majority.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoostedTree {
    n: usize,
    members: Vec<(DecisionTree, BigRational)>,
}

impl BoostedTree {
    pub fn new(n: usize, members: Vec<(DecisionTree, BigRational)>) -> BoostedTree {
        BoostedTree { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[(DecisionTree, BigRational)] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.iter().map(|(t, _)| t.size()).sum()
    }

    pub fn weight_sum(&self) -> BigRational {
        self.members
            .iter()
            .fold(BigRational::zero(), |acc, (_, w)| acc + w)
    }

    /// 1 iff the weight of the trees saying 1 exceeds 1/2.
    pub fn evaluate(&self, x: &Instance) -> bool {
        let score = self
            .members
            .iter()
            .filter(|(t, _)| t.evaluate(x))
            .fold(BigRational::zero(), |acc, (_, w)| acc + w);
        let half = BigRational::new(One::one(), 2.into());
        score > half
    }
}
