use thiserror::Error;

use crate::description::ParseError;

/// Everything that can stop a run, split by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Math(#[from] noloop_core::Error),
}

impl CliError {
    /// 1 for usage, parse and I/O problems; 2 when the mathematics refuses.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 2,
            _ => 1,
        }
    }
}

impl From<noloop_core::field::FieldError> for CliError {
    fn from(e: noloop_core::field::FieldError) -> Self {
        CliError::Math(e.into())
    }
}
