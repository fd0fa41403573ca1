use thiserror::Error;

/// Errors raised by the signature, gate and grid machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed count vector {counts:?}: {reason}")]
    MalformedCount { counts: Vec<i64>, reason: String },
    #[error("rank {rank} out of range for domain {domain}, arity {arity} ({count} entries)")]
    RankOutOfRange {
        domain: usize,
        arity: usize,
        rank: usize,
        count: usize,
    },
    #[error("color {color} outside domain of size {domain}")]
    ColorOutOfDomain { color: usize, domain: usize },
    #[error("assignment has length {got}, signature arity is {expected}")]
    WrongAssignmentLength { expected: usize, got: usize },
    #[error("expected {expected} values, got {got}")]
    ValueCount { expected: usize, got: usize },
    #[error("non-finite signature value at position {0}")]
    NonFinite(usize),
    #[error("expected domain size {expected}, got {got}")]
    DomainMismatch { expected: usize, got: usize },
    #[error("basis vectors {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("basis weight {0} is zero")]
    ZeroWeight(usize),
    #[error("basis vector {0} has malformed shape")]
    BasisShape(usize),
    #[error("parameters violate the Fibonacci constraint")]
    InvalidParams,
    #[error("recurrence system is underdetermined (rank {rank} < {unknowns})")]
    Underdetermined { rank: usize, unknowns: usize },
    #[error("signatures are not Fibonacci gates: {0}")]
    NotFibonacci(String),
    #[error("arity must be at least {min}, got {got}")]
    ArityTooSmall { min: usize, got: usize },
    #[error("gate has no dangling edge to merge")]
    NothingToMerge,
    #[error("grid validation failed: {0}")]
    InvalidGrid(String),
    #[error("enumeration of {terms} terms exceeds the cap of {cap}")]
    EnumerationCap { terms: f64, cap: u64 },
    #[error("Holant value overflowed the floating-point range")]
    Overflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
