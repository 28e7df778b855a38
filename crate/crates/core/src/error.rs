use alloc::string::String;

use thiserror::Error;

/// Errors raised by decompositions, generators and checkers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("non-finite entry")]
    NonFinite,
    #[error("matrix is not Hermitian (asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("matrix is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("matrix is not normal (commutator {commutator:e})")]
    NotNormal { commutator: f64 },
    #[error("operators do not double commute (commutator {commutator:e})")]
    NotDoubleCommuting { commutator: f64 },
    #[error("{what} did not converge within {budget} iterations")]
    NoConvergence { what: &'static str, budget: usize },
    #[error("zero vector")]
    ZeroVector,
    #[error("zero operator")]
    ZeroOperator,
    #[error("random draw is numerically singular")]
    DegenerateDraw,
    #[error("operators are not ordered (smallest eigenvalue of the difference {min_eigenvalue:e})")]
    NotOrdered { min_eigenvalue: f64 },
    #[error("trace of a positive product is negative ({value:e})")]
    NegativeTrace { value: f64 },
    #[error("matrix is numerically singular")]
    Singular,
    #[error("argument of modulus {modulus} lies outside the admissible disk of radius {limit}")]
    OutOfDisk { modulus: f64, limit: f64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("unknown checker `{0}`")]
    UnknownChecker(String),
    #[error("independent evaluation routes disagree (relative gap {gap:e})")]
    OracleMismatch { gap: f64 },
}

impl Error {
    /// True for errors that mean "this random draw does not meet the
    /// hypotheses", as opposed to a numerical failure.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::PreconditionFailed(_)
                | Error::NotApplicable(_)
                | Error::Singular
                | Error::OutOfDisk { .. }
                | Error::ZeroOperator
                | Error::ZeroVector
                | Error::DegenerateDraw
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
