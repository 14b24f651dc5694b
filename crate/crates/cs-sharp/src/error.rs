//! Error type shared by every module, with the process exit code each
//! variant maps to in the command-line tool.

use thiserror::Error;

/// Errors produced by the library and the CLI front end.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid projection: {0}")]
    InvalidProjection(String),

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("lag {lag} out of range for series of length {len}")]
    LagOutOfRange { lag: usize, len: usize },

    #[error("split {split} out of range (valid: 1..={max})")]
    SplitOutOfRange { split: usize, max: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("empty sample")]
    EmptySample,

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("undefined divergence: denominator {denom} is not positive")]
    UndefinedDivergence { denom: f64 },

    #[error("parse error: {0}")]
    ParseError(String),

    #[error("self-test failure: {0}")]
    SelfTestFailure(String),
}

impl Error {
    /// Process exit code for the CLI: 2 parse/precondition, 3 dimension,
    /// 4 projection, 5 undefined divergence, 6 self-test failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. } => 3,
            Error::InvalidProjection(_) => 4,
            Error::UndefinedDivergence { .. } => 5,
            Error::SelfTestFailure(_) => 6,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
