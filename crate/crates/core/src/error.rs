use thiserror::Error;

use crate::perm::Permutation;

/// A malformed permutation or class expression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position} (near {token:?})")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub token: String,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            position,
            token: token.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("membership is not downward closed: {member} is a member but its deletion {deletion} is not")]
    NotDownwardClosed {
        member: Permutation,
        deletion: Permutation,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
