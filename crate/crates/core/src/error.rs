use thiserror::Error;

use crate::linalg::Regime;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mixed arithmetic regimes: {0} vs {1}")]
    RegimeMismatch(Regime, Regime),

    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("{0} is not a usable prime (need an odd prime below 2^32)")]
    InvalidPrime(u64),

    #[error("value {0} has a denominator that vanishes modulo {1}")]
    NotInvertibleModP(String, u64),

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("variable `{0}` collides with a variable already in use")]
    VariableCollision(String),

    #[error("kind violation: {0}")]
    KindViolation(String),

    #[error("not multilinear: {0}")]
    NotMultilinear(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cost guard: estimated {estimate} operations exceeds the limit of {limit}")]
    CostGuard { estimate: u128, limit: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid spec: {0}")]
    Spec(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_cost_guard(&self) -> bool {
        matches!(self, Error::CostGuard { .. })
    }
}
