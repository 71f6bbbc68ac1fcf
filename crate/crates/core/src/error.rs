use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("too few samples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("degenerate data: {0}")]
    DegenerateData(&'static str),
    #[error("near-singular conditioning: 1 - r^2 = {0:e}")]
    NearSingular(f64),
    #[error("k = {k} exceeds the {distinct} distinct points")]
    TooFewDistinctPoints { k: usize, distinct: usize },
    #[error("invalid probability table: {0}")]
    InvalidCpt(&'static str),
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
}
