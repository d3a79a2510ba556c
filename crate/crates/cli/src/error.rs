use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,
    CriterionFailed = 3,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{}: {message}", .path.display())]
    Parse { path: PathBuf, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),

    #[error(transparent)]
    Core(#[from] belldecomp::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Core(belldecomp::Error::NotInvertible { .. }) => Exit::CriterionFailed,
            _ => Exit::Usage,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
