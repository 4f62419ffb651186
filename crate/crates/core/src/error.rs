use thiserror::Error;

/// Errors raised across the library. Indices carried by variants are 1-based,
/// matching the external file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("modulus is not squarefree: {0}")]
    NotSquarefree(String),

    #[error("modulus splits into factors with different ranks: {0}")]
    ModulusSplits(String),

    #[error("matrix is singular: {0}")]
    Singular(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("skew-symmetry violated at (i={i}, j={j}, k={k})")]
    SkewViolation { i: usize, j: usize, k: usize },

    #[error("derived algebra has dimension {actual}, expected {expected}")]
    DerivedDimDeficit { actual: usize, expected: usize },

    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("malformed expression: {0}")]
    Malformed(String),

    #[error("relation list contains a zero vector: {0}")]
    ZeroRelation(String),

    #[error("relation ideal is not proper (dimension {dim} = q(q-1)/2)")]
    NonProperIdeal { dim: usize },

    #[error("algebra carries no generator-relation presentation")]
    NoPresentation,

    #[error("generating hypergraph is not 3-uniform; center sequences are not invariants here")]
    NotThreeUniform,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("entries cannot be separated by any nomenclature tier: {0:?}")]
    UnresolvedTie(Vec<String>),

    #[error("unknown catalog id: {0}")]
    UnknownId(String),

    #[error("algebra file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
