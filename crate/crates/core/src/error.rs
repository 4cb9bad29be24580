//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors produced by matrix construction, factorization and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operand shapes do not match the operation.
    #[error("dimension mismatch: {0}")]
    InvalidDimension(String),

    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An input value violates a precondition of the operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Factorization hit an exactly singular pivot.
    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    /// Cholesky factorization found a non-positive pivot.
    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    /// A dense materialization would exceed the memory budget.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// The QR eigenvalue iteration failed to converge.
    #[error("eigensolver failed to converge: {0}")]
    EigensolverFailure(String),

    /// An iterate left the representable range.
    #[error("numerical overflow: {0}")]
    NumericalOverflow(String),

    /// An internal invariant was violated.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
