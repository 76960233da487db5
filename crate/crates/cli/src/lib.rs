//! Command-line front end: model formats and the `query`, `translate`,
//! `gadget` and `map` commands.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;

pub use error::CliError;
