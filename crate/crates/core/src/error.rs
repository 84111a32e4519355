use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right} variables")]
    AmbientMismatch { left: usize, right: usize },

    #[error("invalid indices: need 1 <= i < j <= n, got n={n}, i={i}, j={j}")]
    InvalidIndices { n: usize, i: usize, j: usize },

    #[error("generator count {mu} outside the admissible range [{min}, {max}]")]
    GeneratorCountOutOfRange { mu: usize, min: usize, max: usize },

    #[error("ideal is not artinian: no pure power of x{0}")]
    NotArtinian(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("scalar must be non-zero")]
    ZeroScalar,

    #[error("entry is not representable in the target field: {0}")]
    InvalidEntry(String),

    #[error("the last variable appears in a generator other than its square")]
    SplitPrecondition,

    #[error("polynomial division left a non-zero remainder")]
    InexactDivision,

    #[error("sequence does not satisfy the precondition: {0}")]
    SequencePrecondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
