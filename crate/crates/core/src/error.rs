use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} and {1} are not coprime")]
    NonCoprime(i64, i64),
    #[error("index {index} exceeds the table bound {bound}")]
    OutOfRange { index: i64, bound: i64 },
    #[error("truncation order {0} is below 1/2")]
    TruncationTooShallow(String),
    #[error("{matrix} is not in {group}")]
    NotInGroup { matrix: String, group: String },
    #[error("cocycle phase {0} does not snap to a multiple of 1/8")]
    SnapFailure(String),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("modulus {modulus} is incompatible with {level}")]
    BadModulus { modulus: i64, level: i64 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(i64, i64),
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("argument {0} lies outside the domain")]
    DomainError(String),
    #[error("{0} is not a prime >= 5")]
    BadPrime(i64),
    #[error("integer overflow while computing {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
