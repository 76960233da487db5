//! Explanation and verification queries over Boolean classifiers.
//!
//! The crate is organised around four pieces:
//!
//! - [`model`]: the classifier families (CNF, DNF, decision trees, decision
//!   lists, random forests, boosted trees, Boolean perceptrons and binarized
//!   neural networks) with exact evaluation and structural validation.
//! - [`dt`]: polynomial-time and polynomial-delay algorithms answering the
//!   nine queries on decision trees.
//! - [`reductions`]: equivalence-preserving translations out of CNF and the
//!   per-query gadgets that encode satisfiability into a query instance.
//! - [`oracle`]: an exhaustive reference engine for every family, usable up
//!   to a configurable number of features.

pub mod dt;
pub mod error;
pub mod generate;
pub mod model;
pub mod oracle;
pub mod query;
pub mod reductions;

pub use error::{Error, Result};
pub use model::{
    BatchNorm, Bnn, BnnBlock, BnnInput, BnnOutput, BoostedTree, Classifier, Clause, CnfFormula,
    DecisionList, DecisionTree, DnfFormula, Family, Instance, Literal, Mlp, Neuron, Node,
    PartialAssignment, RandomForest, Rule, Term, Var, Violation,
};
pub use query::{ImaMode, ImoMode, Query, QueryAnswer, QueryTag};
