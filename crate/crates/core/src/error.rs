use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set size {0} outside the supported range 2..=6")]
    GroundSize(usize),

    #[error("duplicate variable label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown variable label {0:?}")]
    UnknownLabel(String),

    #[error("subset bitmask {bits:#b} does not fit a ground set of {n} variables")]
    SubsetOutOfRange { bits: u32, n: usize },

    #[error("invalid antichain: {0}")]
    InvalidAntichain(String),

    #[error("class is not closed under supersets")]
    NotSupersetClosed,

    #[error("{what} refused for n = {n}; pass the force/long-run flag to run it anyway")]
    TooLarge { what: &'static str, n: usize },

    #[error("graph is not acyclic")]
    Cyclic,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("sets must be pairwise disjoint")]
    Overlap,

    #[error("cluster or set must have at least two elements")]
    TooSmall,

    #[error("imset does not satisfy the standardization equalities")]
    NotStandardized,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("vector violates the dual cone inequalities at {0}")]
    ConeViolation(String),

    #[error("budget exceeded: {points} points requested, budget is {budget}")]
    Budget { points: u128, budget: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
