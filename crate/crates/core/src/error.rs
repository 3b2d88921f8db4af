use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::inversion::Theorem;

pub type Result<T> = std::result::Result<T, Error>;

/// A point of the Gelfand space of a unitized algebra: a character of the
/// group, addressed by its canonical index, or the functional at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Functional {
    Character(usize),
    Infinity,
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functional::Character(i) => write!(f, "character #{i}"),
            Functional::Infinity => write!(f, "phi_inf"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Operands live on different groups, or coordinates do not fit the group.
    #[error("structural mismatch: {0}")]
    Structure(String),

    /// A parameter is outside the domain of the operation (e.g. `p < 1`).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("element is not invertible: Gelfand transform vanishes at {0}")]
    NotInvertible(Functional),

    #[error("{theorem} requires {requirement}")]
    HypothesisViolated {
        theorem: Theorem,
        requirement: String,
    },

    #[error("sampling exhausted after {0} rejected draws")]
    SamplingExhausted(usize),

    /// A property that the construction guarantees did not hold numerically.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn hypothesis(theorem: Theorem, requirement: impl Into<String>) -> Self {
        Error::HypothesisViolated {
            theorem,
            requirement: requirement.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
