//! Crate-wide error type.

use std::path::PathBuf;

/// Errors raised by operators, landscapes, metrics and the experiment harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument violated an operation's contract.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The containing state (population, island set, ...) cannot support the operation.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Lookup of a named algorithm or problem failed.
    #[error("not found: {0}")]
    NotFound(String),

    /// A configuration field failed validation.
    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },

    /// Filesystem failure, tagged with the offending path.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn invalid_state(msg: impl Into<String>) -> Self {
        Error::InvalidState(msg.into())
    }

    pub fn not_found(msg: impl Into<String>) -> Self {
        Error::NotFound(msg.into())
    }

    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the CLI: validation problems exit 1, i/o problems exit 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
