use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} of size {size} exceeds cap {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("series error: {0}")]
    Series(String),
    #[error("solver did not converge: {0}")]
    NoConvergence(String),
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
