use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the topotex pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed input file; `detail` carries the position when known.
    #[error("failed to parse {path}: {detail}")]
    Parse { path: PathBuf, detail: String },

    /// A precondition on arguments was violated.
    #[error("invalid argument: {0}")]
    Invalid(String),

    /// Degenerate numeric input (constant map, zero MAD, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Two inputs that must agree in shape or provenance do not.
    #[error("mismatch: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(path: impl Into<PathBuf>, detail: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            detail: detail.into(),
        }
    }
}
