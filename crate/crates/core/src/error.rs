use thiserror::Error;

/// Errors raised by the library.
///
/// `TheoremViolation` is kept apart from input errors: it means an instance
/// contradicted one of the results the crate certifies, which callers are
/// expected to surface loudly rather than treat as bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("rejected input: {0}")]
    RejectedInput(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("size cap exceeded: {what} = {value} exceeds the limit {limit}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn reject<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::RejectedInput(msg.into()))
}

pub(crate) fn violation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::TheoremViolation(msg.into()))
}

pub(crate) fn check_cap(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::CapExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
