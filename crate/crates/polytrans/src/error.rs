use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("size mismatch: {context} expects length {expected}, got {got}")]
    SizeMismatch {
        context: String,
        expected: usize,
        got: usize,
    },

    #[error("sample points {i} and {j} coincide within tolerance")]
    DuplicateSamplePoints { i: usize, j: usize },

    #[error("scale entry {index} is zero")]
    ZeroScale { index: usize },

    #[error("unknown transform `{0}`")]
    UnknownTransform(String),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("{name} is not defined for size {n}")]
    InvalidSize { name: String, n: usize },

    #[error(
        "not a transversal: coset dimensions sum to {total_coset_dim} of {n}, numerical rank {rank}"
    )]
    NotATransversal {
        n: usize,
        total_coset_dim: usize,
        rank: usize,
    },

    #[error("composite structure violated: {0}")]
    DecompositionStructure(String),

    #[error("base-change solve failed: the coset basis matrix is singular")]
    SingularBaseChange,

    #[error("{algorithm} has no valid split for size {n} with leaf threshold {leaf_threshold}")]
    NoValidSplit {
        algorithm: String,
        n: usize,
        leaf_threshold: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
