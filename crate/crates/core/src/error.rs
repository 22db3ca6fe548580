use thiserror::Error;

use crate::field::FieldId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed textual input (graph6, DIMACS, design files).
    #[error("parse error: {0}")]
    Parse(String),

    /// A mathematical invariant that a construction promises did not hold.
    #[error("invariant violated: {0}")]
    Violation(String),

    #[error("inverse of zero")]
    DivisionByZero,

    #[error("operands belong to different fields: {left} and {right}")]
    FieldMismatch { left: FieldId, right: FieldId },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn violation(msg: impl Into<String>) -> Self {
        Error::Violation(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// True when the error reports a failed mathematical assertion rather
    /// than bad input.
    pub fn is_violation(&self) -> bool {
        matches!(self, Error::Violation(_))
    }
}
