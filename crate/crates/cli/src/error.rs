use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Input {
        context: String,
        #[source]
        source: grodel::Error,
    },
    #[error("{0}")]
    Budget(grodel::Error),
    #[error("result check failed: {0}")]
    Verification(String),
    #[error("cannot encode report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 usage, 2 input, 3 budget.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Budget(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// Wraps a library error, routing enumeration-budget failures to their
    /// own exit code.
    pub(crate) fn lib(context: impl Into<String>, source: grodel::Error) -> Self {
        match source {
            grodel::Error::EnumerationLimit { .. } => CliError::Budget(source),
            _ => CliError::Input { context: context.into(), source },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
