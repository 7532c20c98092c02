use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input data (unknown ids, bad values, bad bounds).
    #[error("input error: {0}")]
    Input(String),

    /// A document could not be parsed; `context` names the file or field.
    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },

    /// The objective configuration does not fit the requested algorithm.
    #[error("configuration error: {0}")]
    Config(String),

    /// An operation was called with arguments that violate its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Brute-force enumeration exceeded its path budget.
    #[error("enumeration budget exceeded: more than {max_paths} paths")]
    Budget { max_paths: usize },

    /// No finite iteration bound is available for the requested mode.
    #[error("unbounded: {0}")]
    Unbounded(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}
