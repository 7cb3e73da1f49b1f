use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system {series}{rank}: {reason}")]
    InvalidRootSystem {
        series: String,
        rank: usize,
        reason: &'static str,
    },

    #[error("cannot parse root system selector {0:?} (expected e.g. \"A2\", \"G2\")")]
    BadSelector(String),

    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("division not exact, remainder nonzero: {remainder}")]
    InexactDivision { remainder: String },

    #[error("pole at evaluation point: factor 1 - q^{alpha:?} vanishes")]
    Pole { alpha: Vec<i64> },

    #[error("repeated weight {0:?} in multiplicity-free input")]
    RepeatedWeight(Vec<i64>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An invariant of the pipeline was violated; always a bug, never bad input.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that signal a bug upstream rather than bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::InexactDivision { .. })
    }
}
