use thiserror::Error;

use crate::graph::Edge;

/// Errors produced anywhere in the library.
///
/// The variants are grouped the way the CLI maps them onto exit codes:
/// input problems, violated preconditions (with a witness where one exists),
/// and certified failures, which mean an internal invariant check tripped.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("graph has a bridge {0}")]
    Bridge(Edge),

    #[error("graph is disconnected: vertex {unreached} is not reachable from vertex 0")]
    Disconnected { unreached: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("orientation conflict on edge {0}")]
    OrientationConflict(Edge),

    #[error("edge budget exceeded: graph has {edges} edges, budget is {budget}")]
    BudgetExceeded { edges: usize, budget: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("certified failure: {0}")]
    CertifiedFailure(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors that indicate a violated input precondition
    /// (bridge, disconnection, wrong parameters for an operation).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Bridge(_)
                | Error::Disconnected { .. }
                | Error::Precondition(_)
                | Error::Infeasible(_)
                | Error::BudgetExceeded { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
