use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of bounds for {what} of size {size}")]
    Bounds {
        what: &'static str,
        index: usize,
        size: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: String, found: String },

    /// A configured resource cap was exceeded.
    #[error("resource limit exceeded: {what} is {actual}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("validation failed: {0}")]
    Validation(String),

    /// An internal invariant was broken, e.g. a column with no signed
    /// representation over a supposedly maximal independent set.
    #[error("logic error: {0}")]
    Logic(String),

    /// Invalid parameters for a generator or experiment.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_index(what: &'static str, index: usize, size: usize) -> Result<()> {
    if index < size {
        Ok(())
    } else {
        Err(Error::Bounds { what, index, size })
    }
}
