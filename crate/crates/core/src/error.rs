use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("pole at {point}")]
    Pole { point: String },
    #[error("complex is not acyclic, H dims: {dims:?}")]
    NotAcyclic { dims: Vec<usize> },
    #[error("basis error: {0}")]
    Basis(String),
    #[error("degenerate tau-chain: {0}")]
    Degenerate(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
