use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A named axiom that failed, together with the elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<(String, usize)>,
}

impl Violation {
    pub fn new(axiom: impl Into<String>, witness: &[(&str, usize)]) -> Self {
        Violation {
            axiom: axiom.into(),
            witness: witness.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom)?;
        if !self.witness.is_empty() {
            let parts: Vec<String> = self
                .witness
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            write!(f, " (witness {})", parts.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("format error: {0}")]
    Format(String),

    #[error("axiom violated: {0}")]
    Violation(Violation),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("size cap exceeded: {what} needs {needed}, cap is {cap}")]
    SizeCap {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A computed instance contradicts a theorem the toolkit relies on.
    /// Seeing this means there is a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("unassigned variable `{0}`")]
    UnassignedVariable(String),

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("order contains a cycle: {}", .0.join(" < "))]
    Cycle(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
