use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    /// Operands live in different ring contexts (field or variable list).
    #[error("ring context mismatch: {0}")]
    ContextMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// Two constructions that must agree produced different matrices, or a
    /// structural assertion failed. Always a bug, never a user error.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
