use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller supplied arguments outside an operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A computation would exceed its configured work budget.
    #[error("resource limit exceeded: {work} evaluations requested, limit is {limit}")]
    ResourceLimit { work: u128, limit: u128 },

    /// An identity that holds as a theorem failed. Always a bug, never bad input.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    /// The chosen scalar type cannot hold an intermediate value.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn inconsistent(msg: impl Into<String>) -> Error {
    Error::Consistency(msg.into())
}
