use thiserror::Error;

use crate::props::Witness;

/// Errors raised by constructors and decision procedures.
///
/// Property *failures* are never errors; they are reported through
/// [`crate::props::PropertyReport`] and friends.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("resource limit exceeded: {what} needs {needed}, limit is {limit}")]
    Resource {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("not a poset: {0}")]
    NotAPoset(String),

    #[error("not a lattice: {message}")]
    NotALattice {
        message: String,
        pair: Option<(usize, usize)>,
    },

    #[error("rank error: {0}")]
    Rank(String),

    #[error("partition error: {0}")]
    Partition(String),

    #[error("not a codeword: {0}")]
    Membership(String),

    #[error("precondition failed: {message}")]
    Precondition {
        message: String,
        witness: Option<Box<Witness>>,
    },

    /// Two independent routes to the same answer disagreed. Always a bug or
    /// a corrupted table.
    #[error("consistency fault: {message}")]
    ConsistencyFault {
        message: String,
        witness: Option<Box<Witness>>,
    },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precondition(message: impl Into<String>, witness: Option<Witness>) -> Self {
        Error::Precondition {
            message: message.into(),
            witness: witness.map(Box::new),
        }
    }

    pub(crate) fn fault(message: impl Into<String>, witness: Option<Witness>) -> Self {
        Error::ConsistencyFault {
            message: message.into(),
            witness: witness.map(Box::new),
        }
    }

    /// The witness attached to a precondition or consistency error, if any.
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Error::Precondition { witness, .. } | Error::ConsistencyFault { witness, .. } => {
                witness.as_deref()
            }
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
