//! Crate-wide error type.
//!
//! Errors split into three families, mirroring the CLI exit-code contract:
//! input errors (bad or mismatched data, exit 2), inconclusive results
//! (a cap, bound or truncation order was too small to decide, exit 3),
//! and internal invariant failures (bugs, never expected).

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("characteristic mismatch: {0} vs {1}")]
    CharMismatch(String, String),
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(i64, i64),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("Jacobian not invertible at 0")]
    SingularLinearPart,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("unsupported over Q: {0}")]
    UnsupportedOverQ(String),
}

impl Error {
    /// Exit code for the CLI contract: 2 for input errors, 3 for
    /// inconclusive outcomes.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Inconclusive(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
