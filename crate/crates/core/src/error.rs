use thiserror::Error;

/// Errors raised by the algebraic kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("system is not zero-dimensional: {0}")]
    NotZeroDimensional(String),
    #[error("no separating linear form found with coefficients up to {0}")]
    SeparatingFormExhausted(u32),
    #[error("projection stack invalid: {0}")]
    StackInvalid(String),
    #[error("degree guard exceeded at level {level}: degree {degree} > {limit}")]
    DegreeGuard { level: usize, degree: usize, limit: usize },
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
