use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied arguments that violate a precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("binomial coefficient C({n}, {k}) does not fit in 128 bits")]
    BinomialOverflow { n: u32, k: i64 },

    /// The least-squares system could not be factorized reliably.
    #[error("ill-conditioned least-squares system: {0}")]
    Conditioning(String),

    /// A curve file could not be parsed or failed schema validation.
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::BinomialOverflow { .. } | Error::Format { .. } => 2,
            Error::Conditioning(_) => 3,
            Error::Io { .. } => 4,
        }
    }
}
