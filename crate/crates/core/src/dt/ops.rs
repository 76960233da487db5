//! Transformations and queries supported in polytime by read-once trees.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{DecisionTree, Node, PartialAssignment, Term};

/// Swaps every leaf label.
pub fn complement(tree: &DecisionTree) -> DecisionTree {
    fn go(node: &Node) -> Node {
        match node {
            Node::Leaf(c) => Node::Leaf(!c),
            Node::Decision { var, lo, hi } => Node::decision(*var, go(lo), go(hi)),
        }
    }
    DecisionTree::new(tree.n(), go(tree.root()))
}

/// Replaces every node testing an assigned feature by the selected child.
pub fn condition(tree: &DecisionTree, a: &PartialAssignment) -> DecisionTree {
    condition_dense(tree, &a.to_dense(tree.n()))
}

pub(crate) fn condition_dense(tree: &DecisionTree, a: &[Option<bool>]) -> DecisionTree {
    fn go(node: &Node, a: &[Option<bool>]) -> Node {
        match node {
            Node::Leaf(c) => Node::Leaf(*c),
            Node::Decision { var, lo, hi } => match a.get(var.idx()).copied().flatten() {
                Some(false) => go(lo, a),
                Some(true) => go(hi, a),
                None => Node::decision(*var, go(lo, a), go(hi, a)),
            },
        }
    }
    DecisionTree::new(tree.n(), go(tree.root(), a))
}

/// Some leaf reachable under `a` is labelled `class`. Read-once makes every
/// path realizable, so this is exact.
pub(crate) fn reaches(node: &Node, a: &[Option<bool>], class: bool) -> bool {
    match node {
        Node::Leaf(c) => *c == class,
        Node::Decision { var, lo, hi } => match a.get(var.idx()).copied().flatten() {
            Some(false) => reaches(lo, a, class),
            Some(true) => reaches(hi, a, class),
            None => reaches(lo, a, class) || reaches(hi, a, class),
        },
    }
}

pub fn is_consistent(tree: &DecisionTree) -> bool {
    reaches(tree.root(), &[], true)
}

pub fn is_valid(tree: &DecisionTree) -> bool {
    !reaches(tree.root(), &[], false)
}

/// `mods(t1) ⊆ mods(t2)`: every 1-path of `t1` makes `t2` valid.
pub fn entails(t1: &DecisionTree, t2: &DecisionTree) -> bool {
    fn go(node: &Node, other: &Node, path: &mut Vec<Option<bool>>) -> bool {
        match node {
            Node::Leaf(false) => true,
            Node::Leaf(true) => !reaches(other, path, false),
            Node::Decision { var, lo, hi } => {
                let i = var.idx();
                let mut ok = true;
                for (b, child) in [(false, lo), (true, hi)] {
                    path[i] = Some(b);
                    ok = go(child, other, path);
                    if !ok {
                        break;
                    }
                }
                path[i] = None;
                ok
            }
        }
    }
    let n = t1.n().max(t2.n());
    go(t1.root(), t2.root(), &mut vec![None; n])
}

pub fn equivalent(t1: &DecisionTree, t2: &DecisionTree) -> bool {
    entails(t1, t2) && entails(t2, t1)
}

/// Every extension of `t` is a model of `tree`.
pub fn is_implicant(t: &Term, tree: &DecisionTree) -> Result<bool> {
    let a = t.to_assignment().ok_or_else(|| {
        Error::ContradictoryTerm(t.literals().first().map(|l| l.var).expect("non-empty"))
    })?;
    Ok(!reaches(tree.root(), &a.to_dense(tree.n()), false))
}

/// Number of instances classified `class`, exact for any `n`.
pub fn count_models(tree: &DecisionTree, class: bool) -> BigUint {
    fn go(node: &Node, depth: usize, n: usize, class: bool, acc: &mut BigUint) {
        match node {
            Node::Leaf(c) if *c == class => *acc += BigUint::from(1u8) << (n - depth),
            Node::Leaf(_) => {}
            Node::Decision { lo, hi, .. } => {
                go(lo, depth + 1, n, class, acc);
                go(hi, depth + 1, n, class, acc);
            }
        }
    }
    let mut acc = BigUint::zero();
    go(tree.root(), 0, tree.n(), class, &mut acc);
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::example;
    use crate::model::{Instance, Var};

    #[test]
    fn complement_flips_every_instance() {
        let t = example::tree();
        let c = complement(&t);
        assert_eq!(c.size(), t.size());
        for i in 0..16 {
            let x = Instance::from_index(4, i);
            assert_eq!(c.evaluate(&x), !t.evaluate(&x));
        }
        assert!(!c.evaluate(&"1111".parse().unwrap()));
    }

    #[test]
    fn conditioning_on_the_x1_x2_path_gives_top() {
        let t = example::tree();
        let a: PartialAssignment = [(Var::new(2), true), (Var::new(1), true)]
            .into_iter()
            .collect();
        let c = condition(&t, &a);
        assert!(is_valid(&c));
        assert!(c.vars().is_empty());
    }

    #[test]
    fn consistency_and_validity() {
        assert!(!is_consistent(&DecisionTree::constant(3, false)));
        assert!(is_valid(&DecisionTree::constant(3, true)));
        assert!(!is_valid(&example::tree()));
        assert!(is_consistent(&example::tree()));
    }

    #[test]
    fn implicants_of_the_example_tree() {
        let t = example::tree();
        assert!(is_implicant(&Term::from_dimacs(&[1, 2]).unwrap(), &t).unwrap());
        assert!(!is_implicant(&Term::from_dimacs(&[1]).unwrap(), &t).unwrap());
        assert!(!is_implicant(&Term::top(), &t).unwrap());
    }

    #[test]
    fn example_tree_has_eleven_negatives() {
        let t = example::tree();
        assert_eq!(count_models(&t, false), BigUint::from(11u8));
        assert_eq!(count_models(&t, true), BigUint::from(5u8));
        assert_eq!(
            count_models(&DecisionTree::constant(70, true), true),
            BigUint::from(1u8) << 70
        );
    }

    #[test]
    fn entailment_basics() {
        let t = example::tree();
        let bottom = DecisionTree::constant(4, false);
        assert!(entails(&bottom, &t));
        assert!(!entails(&t, &bottom));
        assert!(equivalent(&t, &complement(&complement(&t))));
        assert!(!equivalent(&t, &complement(&t)));
    }
}
