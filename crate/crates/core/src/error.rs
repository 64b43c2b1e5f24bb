use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input text could not be parsed.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A size bound (arity, variable count, indicator count, ...) was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Arguments outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested engine does not apply to the given language.
    #[error("dispatch error: {0}")]
    Dispatch(String),
    /// A constructive step failed although its hypotheses were met.
    #[error("construction error: {0}")]
    Construction(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
