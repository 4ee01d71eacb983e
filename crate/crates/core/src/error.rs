use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty interval set has no {0}")]
    EmptySet(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("loop: vertex {0} cannot be adjacent to itself")]
    Loop(String),
    #[error("no admissible cover found: {0}")]
    InfeasibleCover(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("step limit of {0} exceeded")]
    StepLimit(usize),
    #[error("construction defect: {0}")]
    Defect(String),
    #[error("incompatible graphon and vertex measure: {0}")]
    Incompatible(String),
    #[error("unsupported graphon variant: {0}")]
    Unsupported(String),
    #[error("exact evaluation too large: {0}")]
    Complexity(String),
    #[error("admissible tuple sampling exhausted after {0} attempts")]
    TupleExhaustion(usize),
    #[error("invalid model spec: {0}")]
    Spec(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
