//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("slot {slot} out of range for a tensor with {count} slots")]
    SlotOutOfRange { slot: usize, count: usize },

    #[error("permutation acts on {0} letters but the tensor has {1} slots")]
    SizeMismatch(usize, usize),

    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),

    #[error("selected slots do not share a variance")]
    MixedVariance,

    #[error("metric is singular")]
    SingularMetric,

    #[error("invalid signature ({0}, {1}): parts must sum to the dimension")]
    InvalidSignature(usize, usize),

    #[error("jet degree {got} is too low; the operation needs degree >= {need}")]
    DegreeTooLow { got: usize, need: usize },

    #[error("dimension {0} is odd; the Pfaffian density needs an even dimension")]
    OddDimension(usize),

    #[error("(pbar, k) = ({0}, {1}) is an excluded exceptional case")]
    ExceptionalCase(usize, usize),

    #[error("slot count {0} is odd; no perfect matchings exist")]
    OddSlotCount(usize),

    #[error("{what} = {got} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        got: usize,
        cap: usize,
    },

    #[error("rank did not stabilize across sample batches ({first} vs {second}); rerun with more samples")]
    RankUnstable { first: usize, second: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
