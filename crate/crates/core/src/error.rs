use thiserror::Error;

/// Failure of a precondition or of a data-driven input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("not instantiable: {0}")]
    NotInstantiable(String),
    #[error("illegal castling move: {0}")]
    IllegalMove(String),
    #[error("catalog: {0}")]
    Catalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
