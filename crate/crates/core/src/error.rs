use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Inputs outside the domain of an operation (bad order, bad indices,
    /// unsupported parameter range).
    #[error("domain error: {0}")]
    Domain(String),
    /// An internal assembly step produced something other than what the
    /// construction guarantees; indicates a transcription bug, never user error.
    #[error("construction error: {0}")]
    Construction(String),
    /// A sequence failed a property it claims (distinctness, closure, balance).
    #[error("verification error: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }
    pub fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
