use thiserror::Error;

use crate::format::FormatError;

/// A failed command, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Scale(String),

    #[error(transparent)]
    Parse(#[from] FormatError),

    #[error("{0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Scale(_) => 3,
            CliError::Parse(_) => 4,
            CliError::Precondition(_) => 5,
            CliError::Io(_) => 1,
        }
    }
}

impl From<xquery_core::Error> for CliError {
    fn from(e: xquery_core::Error) -> Self {
        use xquery_core::Error as E;
        let msg = e.to_string();
        match e {
            E::OverCap { .. } | E::Timeout => CliError::Scale(msg),
            E::Invalid(_) => CliError::Parse(FormatError::Model(e)),
            E::DimensionMismatch { .. }
            | E::ContradictoryTerm(_)
            | E::FeatureOutOfRange { .. }
            | E::InstanceSyntax(_)
            | E::InvalidOrder { .. } => CliError::Usage(msg),
            E::InconsistentTree
            | E::ValidClause { .. }
            | E::EmptyCnf
            | E::EmptyEnsemble
            | E::TooFewFeatures => CliError::Precondition(msg),
        }
    }
}
