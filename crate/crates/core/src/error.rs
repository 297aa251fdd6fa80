use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input has the wrong shape (array lengths, indices out of range, ...).
    #[error("structural error: {0}")]
    Structure(String),

    /// An operation was called on input that does not satisfy its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numeric failure: {message} (residual {residual:e})")]
    Numeric { message: String, residual: f64 },

    #[error("size limit exceeded: {0}")]
    Size(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// Fusion data whose derived structure is not single-valued.
    #[error("inconsistent fusion data: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn numeric(message: impl Into<String>, residual: f64) -> Self {
        Error::Numeric {
            message: message.into(),
            residual,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
