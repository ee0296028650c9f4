use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] polarbool::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 0 success, 1 verification failure, 2 usage or parameters, 3 I/O or parse.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::Io { .. } | CliError::Parse { .. } => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
