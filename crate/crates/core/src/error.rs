use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("malformed input at {location}: {message}")]
    Malformed { location: String, message: String },

    #[error("ring validation failed:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),

    #[error("model axioms violated:\n  {}", .0.join("\n  "))]
    Cbba(Vec<String>),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for this error under the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Cbba(_) | Error::Malformed { .. } => 2,
            _ => 1,
        }
    }
}
