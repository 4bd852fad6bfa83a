use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid {family} parameters: {constraint}")]
    Domain { family: &'static str, constraint: String },

    #[error("edge list line {line}: {kind}")]
    EdgeList { line: usize, kind: EdgeListError },

    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("labeling has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid label '{0}' (expected -1, 1 or 2)")]
    InvalidLabel(String),

    #[error("graph is not a tree: {0}")]
    NotATree(String),

    #[error("{method} is capped at {cap} vertices but the graph has {order}; {hint}")]
    CapExceeded {
        method: &'static str,
        cap: usize,
        order: usize,
        hint: &'static str,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown theorem '{0}'")]
    UnknownTheorem(String),

    #[error("malformed graph spec '{input}': {reason}")]
    SpecSyntax { input: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(family: &'static str, constraint: impl Into<String>) -> Self {
        Error::Domain {
            family,
            constraint: constraint.into(),
        }
    }
}

/// What went wrong on a single line of an edge-list file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeListError {
    MalformedHeader(String),
    MalformedEdge(String),
    OutOfRange { vertex: usize, order: usize },
    Loop(usize),
    DuplicateEdge(usize, usize),
    EdgeCount { declared: usize, found: usize },
}

impl fmt::Display for EdgeListError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeListError::MalformedHeader(s) => {
                write!(f, "malformed header '{s}' (expected \"n m\")")
            }
            EdgeListError::MalformedEdge(s) => {
                write!(f, "malformed edge '{s}' (expected \"u v\")")
            }
            EdgeListError::OutOfRange { vertex, order } => {
                write!(f, "vertex index {vertex} out of range for order {order}")
            }
            EdgeListError::Loop(v) => write!(f, "loop at vertex {v}"),
            EdgeListError::DuplicateEdge(u, v) => write!(f, "duplicate edge {u} {v}"),
            EdgeListError::EdgeCount { declared, found } => {
                write!(f, "header declares {declared} edges but {found} were given")
            }
        }
    }
}
