use thiserror::Error;

/// Errors raised by the library.
///
/// `Input` is the caller's fault, `CapExceeded` usually means the data is not
/// of finite type, and `Internal` means a structural invariant failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("vertex cap of {cap} exceeded: not finite type or bad input")]
    CapExceeded { cap: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
