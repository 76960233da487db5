use std::collections::BTreeSet;

use super::{Instance, Var, Violation};

/// A decision tree node. `lo` is followed when the tested feature is 0, `hi`
/// when it is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Node {
    Leaf(bool),
    Decision {
        var: Var,
        lo: Box<Node>,
        hi: Box<Node>,
    },
}

impl Node {
    pub fn leaf(class: bool) -> Node {
        Node::Leaf(class)
    }

    pub fn decision(var: Var, lo: Node, hi: Node) -> Node {
        Node::Decision {
            var,
            lo: Box::new(lo),
            hi: Box::new(hi),
        }
    }

    /// If-then-else: `then` is the 1-branch, `otherwise` the 0-branch.
    pub fn ite(var: Var, then: Node, otherwise: Node) -> Node {
        Node::decision(var, otherwise, then)
    }

    pub fn size(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Decision { lo, hi, .. } => 1 + lo.size() + hi.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Decision { lo, hi, .. } => 1 + lo.depth().max(hi.depth()),
        }
    }

    pub fn evaluate(&self, x: &Instance) -> bool {
        let mut node = self;
        loop {
            match node {
                Node::Leaf(c) => return *c,
                Node::Decision { var, lo, hi } => {
                    node = if x.get(*var) { hi } else { lo };
                }
            }
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        if let Node::Decision { var, lo, hi } = self {
            out.insert(*var);
            lo.collect_vars(out);
            hi.collect_vars(out);
        }
    }
}

/// A binary decision tree over `n` features.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DecisionTree {
    n: usize,
    root: Node,
}

impl DecisionTree {
    pub fn new(n: usize, root: Node) -> DecisionTree {
        DecisionTree { n, root }
    }

    pub fn constant(n: usize, class: bool) -> DecisionTree {
        DecisionTree::new(n, Node::Leaf(class))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn into_root(self) -> Node {
        self.root
    }

    /// Total node count, leaves included.
    pub fn size(&self) -> usize {
        self.root.size()
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    pub fn evaluate(&self, x: &Instance) -> bool {
        self.root.evaluate(x)
    }

    /// `Var(T)`: the features tested somewhere in the tree.
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.root.collect_vars(&mut out);
        out
    }

    /// Read-once and range violations, prefixed with `location`.
    pub(crate) fn violations(&self, location: &str) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        walk_violations(&self.root, self.n, &mut path, location, &mut out);
        out
    }
}

fn path_string(location: &str, path: &[(Var, bool)]) -> String {
    let mut s = format!("{location}root");
    for (v, b) in path {
        s.push_str(&format!("/{v}={}", *b as u8));
    }
    s
}

fn walk_violations(
    node: &Node,
    n: usize,
    path: &mut Vec<(Var, bool)>,
    location: &str,
    out: &mut Vec<Violation>,
) {
    let Node::Decision { var, lo, hi } = node else {
        return;
    };
    if var.get() > n {
        out.push(Violation::var_out_of_range(
            path_string(location, path),
            *var,
            n,
        ));
    }
    if path.iter().any(|(v, _)| v == var) {
        // Deeper repeats on this branch would only restate the same defect.
        out.push(Violation::read_once(path_string(location, path), *var));
        return;
    }
    for (branch, child) in [(false, lo), (true, hi)] {
        path.push((*var, branch));
        walk_violations(child, n, path, location, out);
        path.pop();
    }
}

/// Arena form of a tree, used by hot loops and by streams that must own
/// their traversal state.
#[derive(Clone, Debug)]
pub(crate) struct FlatTree {
    pub(crate) nodes: Vec<FlatNode>,
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum FlatNode {
    Leaf(bool),
    Decision { var: usize, lo: usize, hi: usize },
}

impl FlatTree {
    pub(crate) const ROOT: usize = 0;

    pub(crate) fn new(root: &Node) -> FlatTree {
        let mut nodes = Vec::with_capacity(root.size());
        flatten(root, &mut nodes);
        FlatTree { nodes }
    }

    pub(crate) fn evaluate(&self, bits: &[bool]) -> bool {
        let mut at = Self::ROOT;
        loop {
            match self.nodes[at] {
                FlatNode::Leaf(c) => return c,
                FlatNode::Decision { var, lo, hi } => at = if bits[var] { hi } else { lo },
            }
        }
    }
}

fn flatten(node: &Node, nodes: &mut Vec<FlatNode>) -> usize {
    let at = nodes.len();
    match node {
        Node::Leaf(c) => nodes.push(FlatNode::Leaf(*c)),
        Node::Decision { var, lo, hi } => {
            nodes.push(FlatNode::Leaf(false));
            let lo = flatten(lo, nodes);
            let hi = flatten(hi, nodes);
            nodes[at] = FlatNode::Decision {
                var: var.idx(),
                lo,
                hi,
            };
        }
    }
    at
}
