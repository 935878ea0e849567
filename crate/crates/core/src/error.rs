//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("representation is not regular: {0}")]
    NotRegular(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
