use thiserror::Error;

use crate::model::{Var, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} features, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid classifier: {}", join_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("term contains both {0} and its negation")]
    ContradictoryTerm(Var),

    #[error("feature {var} is outside 1..={n}")]
    FeatureOutOfRange { var: usize, n: usize },

    #[error("invalid instance string {0:?}: expected a non-empty string of 0/1")]
    InstanceSyntax(String),

    #[error("elimination order is not a permutation of 1..={n}")]
    InvalidOrder { n: usize },

    #[error("decision tree is inconsistent")]
    InconsistentTree,

    #[error("clause {index} is valid (contains a literal and its negation)")]
    ValidClause { index: usize },

    #[error("translation needs at least one clause")]
    EmptyCnf,

    #[error("an ensemble needs at least one tree")]
    EmptyEnsemble,

    #[error("gadgets need a formula over at least one variable")]
    TooFewFeatures,

    #[error("{n} features exceeds the oracle cap of {cap}")]
    OverCap { n: usize, cap: usize },

    #[error("oracle deadline exceeded")]
    Timeout,
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
