use super::{Instance, Term};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rule {
    pub term: Term,
    pub class: bool,
}

impl Rule {
    pub fn new(term: Term, class: bool) -> Rule {
        Rule { term, class }
    }
}

/// An ordered list of rules; the first rule whose term holds decides.
/// A well-formed list ends with the empty term ⊤.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecisionList {
    n: usize,
    rules: Vec<Rule>,
}

impl DecisionList {
    pub fn new(n: usize, rules: Vec<Rule>) -> DecisionList {
        DecisionList { n, rules }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn size(&self) -> usize {
        self.rules.iter().map(|r| r.term.len()).sum()
    }

    /// Lists without a terminal ⊤ rule fall through to 0.
    pub fn evaluate(&self, x: &Instance) -> bool {
        self.rules
            .iter()
            .find(|r| r.term.eval(x))
            .is_some_and(|r| r.class)
    }
}
