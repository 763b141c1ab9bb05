use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unstable moduli data: g = {g}, n = {n} violates n > 2 - 2g")]
    Unstable { g: u32, n: usize },
    #[error("expressions live on different moduli data or truncation orders")]
    SpecMismatch,
    #[error("missing Chern character component in degree {0}")]
    MissingComponent(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
