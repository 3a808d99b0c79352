use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("point {x} lies outside the domain [{a}, {b}]")]
    OutOfDomain { x: f64, a: f64, b: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("singular pivot in column {column} of banded factorization")]
    SingularPivot { column: usize },

    #[error("Invalid map coordinates: ({x}, {y}) maps to column {col}, row {row} of a {cols}x{rows} fuel map")]
    InvalidMapCoordinates {
        x: f64,
        y: f64,
        col: i64,
        row: i64,
        cols: usize,
        rows: usize,
    },

    #[error("{path}: row {row}, column {column}: {message}")]
    Format {
        path: String,
        row: usize,
        column: usize,
        message: String,
    },

    #[error("usage: {0}")]
    Usage(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
