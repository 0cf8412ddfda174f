use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{source_name}:{line}: {msg}")]
    Config { source_name: String, line: usize, msg: String },
    #[error(transparent)]
    Numerical(#[from] biosim_core::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 1 for anything the user can fix in the invocation, 2 when the
    /// numerics fail.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(biosim_core::Error::InvalidInput(_)) => 1,
            CliError::Numerical(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
