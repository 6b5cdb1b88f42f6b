//! Exact dense linear algebra over `Q` and `F_p`.

mod matrix;
mod scalar;

pub(crate) use matrix::random_scalar;
pub use matrix::{random_matrix, rank_of_power, Matrix, DEFAULT_RATIONAL_BOUND};
pub use scalar::{is_prime, Field, Scalar, MAX_PRIME};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("{0} is not a prime below 2^61")]
    InvalidField(u64),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("entry {0} does not belong to field {1}")]
    ForeignEntry(String, Field),
}
