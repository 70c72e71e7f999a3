//! Error type shared by the whole crate.
//!
//! Two broad classes matter to callers:
//!
//! * [`Error::Format`] — the input document could not be parsed or refers to
//!   objects that do not exist.  The CLI maps this to exit code 64.
//! * [`Error::Domain`] — the input parsed fine but violates a mathematical
//!   precondition (non-invertible basis, non-integral index, a tail rule that
//!   does not divide, ...).  The CLI maps this to exit code 65.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad JSON, bad scalar literal, missing named object.
    #[error("format error: {0}")]
    Format(String),

    /// Mathematically invalid input for the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The data is valid but has a shape this implementation does not
    /// handle exactly (e.g. mixing incommensurable quadratic scales where
    /// no exact decision procedure is available).
    #[error("unsupported shape: {0}")]
    Unsupported(String),

    /// A resource bound was exceeded (group order, search depth, ...).
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
