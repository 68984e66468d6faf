use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed gluing JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{context}: expected length {expected}, found {found}")]
    LengthMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("{context}: sign must be 1 or -1, found {value}")]
    InvalidSign { context: String, value: i64 },

    #[error("invalid quad type: {0}")]
    InvalidQuadType(String),

    #[error("enumeration refused: {n} tetrahedra exceeds the cap of {cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid filling: {0}")]
    InvalidFilling(String),

    #[error("basis change is not unimodular (determinant {0})")]
    NotUnimodular(i64),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
