use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the set where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two inputs that must be distinct coincide.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A geometric precondition (tangency, separation) does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
