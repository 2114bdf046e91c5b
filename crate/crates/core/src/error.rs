use std::fmt;

use serde::Serialize;

/// Which limit a computation ran into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResourceExceeded {
    /// Short name of the guarded computation.
    pub what: String,
    /// The limit that was hit, e.g. "time 600s" or "nodes 1000000".
    pub limit: String,
    /// Work completed before the limit was hit.
    pub progress: u64,
}

impl fmt::Display for ResourceExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} exceeded {} after {} units of work",
            self.what, self.limit, self.progress
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("resource limit: {0}")]
    Resource(ResourceExceeded),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
