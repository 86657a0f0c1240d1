//! Error type shared by all framepot modules.

use thiserror::Error;

/// Errors produced by configuration validation, Gram-matrix algebra, and the
/// optimization drivers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("row {index} has norm {norm} (expected 1 within {tol:e})")]
    NonUnitRow { index: usize, norm: f64, tol: f64 },

    #[error("matrix is not symmetric: max |G - G^T| entry is {max_asymmetry:e}")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("diagonal entry {index} is {value} (expected 1 within {tol:e})")]
    DiagonalNotUnit { index: usize, value: f64, tol: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("gram matrix has numerical rank {rank}, which exceeds the target dimension {dim}")]
    RankExceedsDimension { rank: usize, dim: usize },

    #[error("gram matrix is numerically full rank: smallest eigenvalue {min_eigenvalue:e} exceeds {tol:e}")]
    FullRank { min_eigenvalue: f64, tol: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid simplex point: {0}")]
    InvalidSimplexPoint(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("csv parse error at line {line}: {message}")]
    CsvParse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
