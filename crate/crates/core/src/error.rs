use thiserror::Error;

/// Errors raised by the algebra kernels and file readers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("domain mismatch: {0}")]
    Mismatch(String),
    #[error("minor budget of {0} exhausted before the gcd stabilised")]
    Budget(usize),
    #[error("{0}")]
    Compute(String),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn constraint(message: impl Into<String>) -> Self {
        Error::Constraint(message.into())
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        Error::Mismatch(message.into())
    }

    pub fn compute(message: impl Into<String>) -> Self {
        Error::Compute(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
