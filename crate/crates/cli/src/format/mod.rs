//! Model files: DIMACS for CNF/DNF, JSON for everything else.

mod dimacs;
mod json;
mod rational;

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;
use xquery_core::{Classifier, Family};

pub use dimacs::{parse_cnf, parse_dnf, write_cnf, write_dnf};
pub use rational::{format_rational, parse_rational};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Json(#[from] serde_json::Error),

    #[error("{location}: {message}")]
    Value { location: String, message: String },

    #[error(transparent)]
    Model(#[from] xquery_core::Error),

    #[error("cannot tell the format of {0}; pass --format")]
    UnknownFormat(PathBuf),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// File suffix for each family.
pub fn extension(family: Family) -> &'static str {
    match family {
        Family::Cnf => ".cnf",
        Family::Dnf => ".dnf",
        Family::Tree => ".dt.json",
        Family::List => ".dl.json",
        Family::Forest => ".rf.json",
        Family::Boosted => ".bt.json",
        Family::Mlp => ".mlp.json",
        Family::Bnn => ".bnn.json",
    }
}

pub fn family_of_path(path: &Path) -> Option<Family> {
    let name = path.file_name()?.to_str()?;
    Family::ALL
        .into_iter()
        .find(|&f| name.len() > extension(f).len() && name.ends_with(extension(f)))
}

/// Parses and validates a model.
pub fn parse_model(text: &str, family: Family) -> Result<Classifier, FormatError> {
    let c = match family {
        Family::Cnf => Classifier::Cnf(parse_cnf(text)?),
        Family::Dnf => Classifier::Dnf(parse_dnf(text)?),
        Family::Tree => Classifier::Tree(json::parse_tree(text)?),
        Family::List => Classifier::List(json::parse_list(text)?),
        Family::Forest => Classifier::Forest(json::parse_forest(text)?),
        Family::Boosted => Classifier::Boosted(json::parse_boosted(text)?),
        Family::Mlp => Classifier::Mlp(json::parse_mlp(text)?),
        Family::Bnn => Classifier::Bnn(json::parse_bnn(text)?),
    };
    let violations = c.validate();
    if !violations.is_empty() {
        return Err(xquery_core::Error::Invalid(violations).into());
    }
    Ok(c)
}

pub fn write_model(c: &Classifier) -> String {
    match c {
        Classifier::Cnf(phi) => write_cnf(phi),
        Classifier::Dnf(d) => write_dnf(d),
        Classifier::Tree(t) => json::write_tree(t),
        Classifier::List(l) => json::write_list(l),
        Classifier::Forest(f) => json::write_forest(f),
        Classifier::Boosted(b) => json::write_boosted(b),
        Classifier::Mlp(m) => json::write_mlp(m),
        Classifier::Bnn(b) => json::write_bnn(b),
    }
}

/// Reads a model, taking the format from `family` or else the file name.
pub fn read_model(path: &Path, family: Option<Family>) -> Result<Classifier, FormatError> {
    let family = family
        .or_else(|| family_of_path(path))
        .ok_or_else(|| FormatError::UnknownFormat(path.to_path_buf()))?;
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_model(&text, family)
}

pub fn save_model(c: &Classifier, path: &Path) -> Result<(), FormatError> {
    fs::write(path, write_model(c)).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}
