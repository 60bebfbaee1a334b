use thiserror::Error;

/// Errors raised across constructions, verification and classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("size {size} exceeds the limit {limit}")]
    SizeExceeded { size: u128, limit: u128 },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("index {index} out of range 0..{bound}")]
    IndexError { index: usize, bound: usize },
    #[error("malformed block: {0}")]
    MalformedBlock(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group is not transitive ({0} point orbits)")]
    NotTransitive(usize),
    #[error("generator {generator} maps block {block:?} outside the block set")]
    NotAutomorphism { generator: usize, block: [u32; 3] },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::DomainError(msg.into())
}
