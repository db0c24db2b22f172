//! Command implementations behind the `lfa` binary.

pub mod commands;
pub mod config;
pub mod manifest;

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] lfa_core::Error),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// 2 input/schema/config, 3 no factor retained, 4 singular correlation,
    /// 5 composite definition or parameter range.
    pub fn exit_code(&self) -> i32 {
        use lfa_core::Error::*;
        match self {
            CliError::Core(e) => match e {
                NoFactorRetained { .. } => 3,
                SingularCorrelation { .. } => 4,
                IncompleteDefinition(_) | AlphaRange(_) | KRange { .. } | ZeroDenominator(_)
                | UnknownRegion(_) => 5,
                Parse(_) | Schema(_) | DegenerateData(_) | ZeroVariance(_) | DimensionMismatch(_)
                | Config(_) | Io(_) => 2,
            },
            CliError::Config(_) | CliError::Io { .. } => 2,
        }
    }
}
