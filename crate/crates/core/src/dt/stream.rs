//! Lazy enumeration of the instances reaching one class of a tree.

use crate::model::{DecisionTree, FlatNode, FlatTree, Instance};

/// How a feature left open by a path is completed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Fill {
    /// Both values, in binary-counter order.
    Free,
    Fixed(bool),
}

/// Instances classified `target` by a tree, produced one at a time.
///
/// Leaves are visited depth-first with the 0-branch first. Under each leaf,
/// free features are completed like a binary counter whose least significant
/// digit is the lowest free feature. The work between two items is bounded by
/// the tree size plus `n`, independently of how many items there are.
#[derive(Clone, Debug)]
pub struct InstanceStream {
    tree: FlatTree,
    target: bool,
    fill: Vec<Fill>,
    stack: Vec<(usize, u8)>,
    path: Vec<Option<bool>>,
    cursor: Option<Cursor>,
}

#[derive(Clone, Debug)]
struct Cursor {
    free: Vec<usize>,
    counter: Vec<bool>,
}

impl InstanceStream {
    pub(crate) fn new(tree: &DecisionTree, target: bool, fill: Vec<Fill>) -> InstanceStream {
        debug_assert_eq!(fill.len(), tree.n());
        InstanceStream {
            tree: FlatTree::new(tree.root()),
            target,
            path: vec![None; fill.len()],
            fill,
            stack: vec![(FlatTree::ROOT, 0)],
            cursor: None,
        }
    }

    pub fn empty() -> InstanceStream {
        InstanceStream {
            tree: FlatTree::new(&crate::model::Node::Leaf(false)),
            target: true,
            fill: Vec::new(),
            stack: Vec::new(),
            path: Vec::new(),
            cursor: None,
        }
    }

    fn emit(&self) -> Instance {
        let cursor = self.cursor.as_ref().expect("positioned on a leaf");
        let mut bits: Vec<bool> = self
            .path
            .iter()
            .zip(&self.fill)
            .map(|(p, f)| match (p, f) {
                (Some(b), _) | (None, Fill::Fixed(b)) => *b,
                (None, Fill::Free) => false,
            })
            .collect();
        for (&i, &b) in cursor.free.iter().zip(&cursor.counter) {
            bits[i] = b;
        }
        Instance::new(bits)
    }

    /// Steps the counter; false once every completion has been produced.
    fn advance_cursor(&mut self) -> bool {
        let Some(cursor) = self.cursor.as_mut() else {
            return false;
        };
        for digit in cursor.counter.iter_mut() {
            *digit = !*digit;
            if *digit {
                return true;
            }
        }
        self.cursor = None;
        false
    }

    /// Moves to the next leaf of the target class.
    fn next_leaf(&mut self) -> bool {
        while let Some(top) = self.stack.last_mut() {
            let (at, state) = *top;
            match self.tree.nodes[at] {
                FlatNode::Leaf(c) => {
                    self.stack.pop();
                    if c == self.target {
                        let free: Vec<usize> = (0..self.path.len())
                            .filter(|&i| self.path[i].is_none() && self.fill[i] == Fill::Free)
                            .collect();
                        self.cursor = Some(Cursor {
                            counter: vec![false; free.len()],
                            free,
                        });
                        return true;
                    }
                }
                FlatNode::Decision { var, lo, hi } => match state {
                    0 => {
                        top.1 = 1;
                        self.path[var] = Some(false);
                        self.stack.push((lo, 0));
                    }
                    1 => {
                        top.1 = 2;
                        self.path[var] = Some(true);
                        self.stack.push((hi, 0));
                    }
                    _ => {
                        self.path[var] = None;
                        self.stack.pop();
                    }
                },
            }
        }
        false
    }
}

impl Iterator for InstanceStream {
    type Item = Instance;

    fn next(&mut self) -> Option<Instance> {
        if self.advance_cursor() || self.next_leaf() {
            Some(self.emit())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Node, Var};

    #[test]
    fn counter_order_under_a_single_leaf() {
        let t = DecisionTree::constant(2, true);
        let got: Vec<String> = InstanceStream::new(&t, true, vec![Fill::Free; 2])
            .map(|x| x.to_string())
            .collect();
        assert_eq!(got, ["00", "10", "01", "11"]);
    }

    #[test]
    fn zero_branch_first_and_fixed_fill() {
        let t = DecisionTree::new(
            3,
            Node::decision(Var::new(2), Node::Leaf(true), Node::Leaf(true)),
        );
        let fill = vec![Fill::Fixed(true), Fill::Free, Fill::Fixed(false)];
        let got: Vec<String> = InstanceStream::new(&t, true, fill)
            .map(|x| x.to_string())
            .collect();
        assert_eq!(got, ["100", "110"]);
    }

    #[test]
    fn empty_targets() {
        let t = DecisionTree::constant(3, false);
        assert_eq!(
            InstanceStream::new(&t, true, vec![Fill::Free; 3]).count(),
            0
        );
        assert_eq!(InstanceStream::empty().count(), 0);
        assert_eq!(
            InstanceStream::new(&t, false, vec![Fill::Free; 3]).count(),
            8
        );
    }
}
