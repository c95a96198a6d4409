//! Error type shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("tuple length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix is not strictly positive: min eigenvalue {min_eig:e} below floor {floor:e}")]
    NotStrictlyPositive { min_eig: f64, floor: f64 },

    #[error("matrix is not Hermitian: deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("eigenvalue {eigenvalue:e} outside the domain of `{function}` (floor {floor:e})")]
    DomainViolation {
        function: String,
        eigenvalue: f64,
        floor: f64,
    },

    #[error("{what} failed to converge within {limit} iterations")]
    IterationLimit { what: &'static str, limit: usize },

    #[error("unknown scalar function `{0}`")]
    UnknownFunction(String),

    #[error("parameter {name} = {value} out of range [{lo}, {hi}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("Sinkhorn scaling did not reach {threshold:e} within {iterations} iterations (residual {residual:e})")]
    SinkhornNonConvergence {
        iterations: usize,
        residual: f64,
        threshold: f64,
    },

    #[error("instance generator produced only degenerate instances in {attempts} attempts")]
    DegenerateInstance { attempts: usize },

    #[error("rejection sampler exhausted its budget of {attempts} attempts")]
    RejectionBudgetExhausted { attempts: usize },

    #[error("invalid positive-map kind `{0}`")]
    InvalidKind(String),

    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error("serialization error: {0}")]
    Serde(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
