use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge {{{0}, {1}}} is not valid for this graph")]
    InvalidEdge(usize, usize),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A caller broke an operation's precondition (improper input coloring,
    /// `q` equal to the anchor color, adjacent endpoints, ...).
    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("input rejected by the membership gate: {0}")]
    Rejected(String),

    #[error("no proper coloring exists: {0}")]
    Infeasible(String),

    #[error("{what} needs {size} units of work, above the limit of {limit}")]
    GuardExceeded { what: &'static str, size: f64, limit: f64 },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("distributions live on different universes: {0}")]
    MismatchedUniverse(String),

    #[error("unknown {kind} `{name}` (available: {available})")]
    UnknownName {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
