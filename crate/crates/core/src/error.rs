use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors shared by the search primitives, benchmark objectives and dataset I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("expected vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid bounds at component {index}: [{lower}, {upper}] (lower must be finite and strictly below upper)")]
    InvalidBounds {
        index: usize,
        lower: f64,
        upper: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("component {index} = {value} outside domain [{lower}, {upper}]")]
    OutOfDomain {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("objective evaluation failed: {0}")]
    Objective(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}:{line}: {message}", path.display())]
    MalformedData {
        path: PathBuf,
        line: usize,
        message: String,
    },
}
