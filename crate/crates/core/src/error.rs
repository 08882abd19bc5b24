use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the spectral routines and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("potential is singular at {0}")]
    Singularity(Complex64),

    #[error("{0} lies on the upward branch cut of a non-integer power")]
    BranchCut(Complex64),

    #[error("range error: {0}")]
    Range(String),

    #[error("grid build failed: {0}")]
    Build(String),

    #[error("shift {0} collides with an eigenvalue (singular factorization)")]
    ShiftCollision(Complex64),

    #[error(
        "levels {first} and {second} converged to the same eigenvalue {eigenvalue} \
         (residuals {first_residual:e} and {second_residual:e})"
    )]
    DuplicateEigenvalue {
        first: usize,
        second: usize,
        eigenvalue: Complex64,
        first_residual: f64,
        second_residual: f64,
    },

    #[error("energy {value} is not real (relative imaginary part {relative:e})")]
    NonReal { value: Complex64, relative: f64 },

    #[error("root search failed: {0}")]
    RootSearch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
