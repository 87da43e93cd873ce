//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix needs {expected} entries, got {got}")]
    MatrixShape { expected: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("torsion orders must be >= 2 and form a divisibility chain, got {0:?}")]
    InvalidTorsion(Vec<String>),

    #[error("element has {got} coordinates, ambient group has {expected}")]
    ElementLength { expected: usize, got: usize },

    #[error("ground index {index} out of range for ground size {size}")]
    InvalidIndex { index: usize, size: usize },

    #[error("ground size {size} exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("{a:?} is not a sublist of {b:?}")]
    NotASubset { a: u32, b: u32 },

    #[error("subset {0:?} is not a basis")]
    NotABasis(u32),

    #[error("matroid has proper vectors, not a molecule")]
    NotAMolecule,

    #[error("matching count {0} is not an integer; invalid multiplicity table")]
    NonIntegralCount(String),

    #[error("rank table must have {expected} entries, got {got}")]
    TableSize { expected: usize, got: usize },

    #[error("multiplicity values must be positive, found {0} for subset {1}")]
    NonPositiveMultiplicity(String, u32),

    #[error("list does not span the ambient free part: rank {rank} < free rank {free_rank}")]
    RankDeficient { rank: usize, free_rank: usize },

    #[error("element order is not a permutation of 0..{0}")]
    InvalidOrder(usize),

    #[error("x-degree {degree} exceeds ambient rank {rank}")]
    DegreeExceedsRank { degree: usize, rank: usize },

    #[error("no exact integer solution")]
    NoIntegerSolution,
}

pub type Result<T> = std::result::Result<T, Error>;
