use thiserror::Error;

use crate::zn::Subgroup;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("modulus {0} outside supported range 1..={max}", max = crate::zn::MAX_MODULUS)]
    ModulusOutOfRange(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("digraph is not strongly connected; vertex 0 reaches only {reachable}")]
    Disconnected { reachable: Subgroup },

    #[error("eigenvalue grouping is ambiguous at distance {distance:e} (tolerance {tolerance:e})")]
    Precision { distance: f64, tolerance: f64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("n = {n} exceeds the search cap {cap}")]
    Budget { n: u32, cap: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
