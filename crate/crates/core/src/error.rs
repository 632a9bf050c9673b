use thiserror::Error;

/// Errors raised by the numerical and enumeration routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("evaluation at or too close to a pole: {0}")]
    Pole(String),

    #[error("no convergence after {iterations} iterations: {what}")]
    NonConvergence { what: String, iterations: usize },

    #[error("truncation insufficient: {0}")]
    Truncation(String),

    #[error("requested accuracy not reached: {0}")]
    Accuracy(String),

    #[error("branch cut: {0}")]
    Branch(String),

    #[error("verification mismatch: {0}")]
    Verification(String),

    #[error("table size limit exceeded: {0}")]
    Capacity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization failed: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
