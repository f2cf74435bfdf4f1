use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("negative exponent {0}")]
    NegativeExponent(i64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("not exactly divisible")]
    NotDivisible,

    #[error("polynomial degree {needed} exceeds cap {cap}")]
    DegreeCap { needed: u64, cap: u64 },

    #[error("unbound variable {0}")]
    UnboundVariable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph: {0}")]
    Graph(String),

    #[error("graph is not admissible: {0}")]
    NotAdmissible(String),

    #[error("vertex list does not generate the graph: {0}")]
    NotGenerating(String),

    #[error("size limit exceeded: {what} = {size}, limit {limit}")]
    SizeLimit { what: &'static str, size: u64, limit: u64 },

    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
