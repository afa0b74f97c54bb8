use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group too large to materialize ({0} elements)")]
    GroupTooLarge(usize),
    #[error("unknown catalog group `{0}`")]
    UnknownCatalog(String),
    #[error("element or subgroup does not lie in the expected group: {0}")]
    NotContained(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("mismatched groups: {0}")]
    Mismatch(String),
    #[error("not a p-group: {0}")]
    NotPGroup(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("module is not a p-permutation module")]
    NotPPermutation,
    #[error("module is decomposable")]
    Decomposable,
    #[error("field is not a splitting field: {0}")]
    NotSplit(String),
    #[error("decomposition did not converge after {trials} trials (seed {seed})")]
    DecompositionFailed { trials: usize, seed: u64 },
    #[error("precision certificate failed: {0}")]
    Precision(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
