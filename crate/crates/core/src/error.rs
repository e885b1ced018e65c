use thiserror::Error;

/// Everything that can go wrong inside the engine.
///
/// The variants are grouped the same way the command-line tool maps them to
/// exit statuses: bad input, exceeded caps, and violated invariants.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{what} too large to enumerate: needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: usize,
    },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("action is not transitive: {0}")]
    Intransitive(String),

    /// A statement that is a theorem failed to hold. Always a bug.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, needed: impl ToString, cap: usize) -> Self {
        Error::CapExceeded {
            what,
            needed: needed.to_string(),
            cap,
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
