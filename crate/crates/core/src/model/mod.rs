//! Classifier families and their evaluation semantics.

mod classifier;
mod ensemble;
pub mod example;
mod instance;
mod linear;
mod list;
mod logic;
mod neural;
mod tree;

pub use classifier::{Classifier, Compiled, Family, Violation};
pub use ensemble::{BoostedTree, RandomForest};
pub use instance::{Instance, PartialAssignment, Var};
pub use list::{DecisionList, Rule};
pub use logic::{Clause, CnfFormula, DnfFormula, Literal, Term};
pub use neural::{BatchNorm, Bnn, BnnBlock, BnnInput, BnnOutput, Mlp, Neuron};
pub use tree::{DecisionTree, Node};

pub(crate) use tree::{FlatNode, FlatTree};
