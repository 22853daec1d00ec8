use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CncError>;

#[derive(Debug, Error)]
pub enum CncError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Bad magic, bad version or malformed text record.
    #[error("format error: {0}")]
    Format(String),

    #[error("length error: {0}")]
    Length(String),

    /// Non-finite or otherwise unusable numeric value in input data.
    #[error("value error: {0}")]
    Value(String),

    /// Annotation or graph data that violates a structural invariant.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("shape error: {0}")]
    Shape(String),

    /// Operation called outside its domain (too few videos, K < 1, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric error at frame {frame}: {what}")]
    Numeric { frame: usize, what: String },

    #[error("config error: {0}")]
    Config(String),
}

impl CncError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CncError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the `cnc` binary for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            CncError::Config(_) => 2,
            CncError::Io { .. } => 3,
            CncError::Format(_) | CncError::Length(_) => 4,
            CncError::Value(_) | CncError::Validation(_) | CncError::Shape(_) => 5,
            CncError::Domain(_) | CncError::Numeric { .. } => 6,
        }
    }
}
