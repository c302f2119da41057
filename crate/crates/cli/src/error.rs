use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] mrey_core::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{0} of {1} checks failed")]
    VerifyFailed(usize, usize),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 failed verification, 2 bad input, 3 numerical or IO failure, 64 usage.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed(..) => 1,
            CliError::Config(_) => 2,
            CliError::Core(e) if e.is_numerical() => 3,
            CliError::Core(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Usage(_) => 64,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
