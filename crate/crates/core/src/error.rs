use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed json: {0}")]
    Json(String),
    #[error("{0}")]
    Invalid(String),
    #[error("unknown vertex label {0}")]
    UnknownVertex(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("graph is not planar")]
    NotPlanar,
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("limit exceeded: {0}")]
    Limit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
