use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("lattice basis is not of full rank")]
    NotFullRank,

    #[error("pairing is degenerate")]
    DegeneratePairing,

    #[error("sublattice inclusion violated: {0}")]
    NotSublattice(String),

    #[error("modulus must be a positive integer, got {0}")]
    NonPositiveModulus(i64),

    #[error("invalid Cartan type '{0}'")]
    InvalidCartanType(String),

    #[error("invalid isogeny specification: {0}")]
    InvalidIsogeny(String),

    #[error("level {level} is not a multiple of d = {d}")]
    InvalidLevel { level: i64, d: u64 },

    #[error("vector {vector} does not lie in the {lattice}")]
    NotInLattice { vector: String, lattice: &'static str },

    #[error("simple index {index} out of range for rank {rank}")]
    BadIndex { index: usize, rank: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("the zero series has no valuation")]
    ZeroSeries,

    #[error("series precision exhausted: {0}")]
    InsufficientPrecision(String),

    #[error("characteristic {0} is neither 0 nor a prime")]
    NotPrime(u64),

    #[error("unsupported coefficient field '{0}'")]
    UnsupportedField(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A structural identity that must hold failed. Always a bug.
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
