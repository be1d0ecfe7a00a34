use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error("ground set of size {size} exceeds the enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("ground set of size {0} exceeds the supported maximum of 64 elements")]
    GroundTooLarge(usize),

    #[error("sampling anomaly: {0}")]
    Anomaly(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
