//! Polynomial algorithms for decision trees.
//!
//! Everything here relies on trees being read-once, so that every
//! root-to-leaf path is realizable and conditioning is a plain rewrite.

mod ops;
mod queries;
mod stream;
mod weights;

pub use ops::{
    complement, condition, count_models, entails, equivalent, is_consistent, is_implicant, is_valid,
};
pub use queries::{
    answer, dpi, eco, eco_one, emc, emc_one, enumerate_class, first_model, iir, ima, imo, mcp,
};
pub use stream::{Fill, InstanceStream};
pub use weights::{min_weight, optimize, Cost, WeightFn};
