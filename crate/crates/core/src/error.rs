use thiserror::Error;

/// Every failure the library reports. Non-membership in a span and failed
/// checks are results, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative factorization")]
    FactorZero,
    #[error("not a unit: constant coefficient is zero")]
    NotUnit,
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("coefficient index {index} out of range for order {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("configuration is not generic: {0}")]
    Degenerate(String),
    #[error("argument outside the generator domain: {0}")]
    Domain(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("too many variables (at most {0})")]
    TooManyVariables(usize),
    #[error("unknown statement id `{0}`")]
    UnknownStatement(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
