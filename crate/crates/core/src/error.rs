use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..{n}: {word:?}")]
    InvalidPermutation { n: usize, word: Vec<usize> },
    #[error("invalid dimension sequence {0:?}: parts must be positive")]
    InvalidDimensionSequence(Vec<usize>),
    #[error("length mismatch: permutation has {word} letters but the dimension sequence sums to {dims}")]
    LengthMismatch { word: usize, dims: usize },
    #[error("dimension sequence {0:?} is not symmetric")]
    AsymmetricDimensionSequence(Vec<usize>),
    #[error("{0} is not a minimal coset representative for the given dimension sequence")]
    NotMinimalRepresentative(String),
    #[error("ambient dimension must be even, got {0}")]
    OddDimension(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid orbit: {0}")]
    InvalidOrbit(String),
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
