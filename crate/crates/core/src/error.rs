use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid modulus {0}: torsion moduli must be at least 2")]
    InvalidModulus(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("group is infinite: {0}")]
    InfiniteGroup(String),

    #[error("generating set is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("generating set contains the identity")]
    ContainsIdentity,

    #[error("lattice containment violated: {0}")]
    NotContained(String),

    #[error("illegal homotopy move: {0}")]
    IllegalMove(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("improper coloring: {0}")]
    ImproperColoring(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("computation budget exhausted")]
    BudgetExhausted,

    #[error("ledger error: {0}")]
    Ledger(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
