use thiserror::Error;

/// Errors produced by the exact, symbolic and numeric routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator is divisible by the prime; the prime has to be skipped.
    #[error("denominator divisible by p = {prime}")]
    DenominatorCollision { prime: u64 },

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("modulus {prime}^{exponent} does not fit in 62 bits")]
    ModulusOverflow { prime: u64, exponent: u32 },

    #[error("invalid range: lower bound {lower} must be below upper bound {upper}")]
    InvalidRange { lower: i128, upper: i128 },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("enumeration of {required} tuples exceeds the guard of {limit}")]
    SizeGuard { required: u128, limit: u128 },

    #[error("cannot reduce: {0}")]
    InvalidReduction(String),

    #[error("pole did not cancel: nonzero coefficient at exponent {exponent:?}")]
    PoleResidue { exponent: Vec<i64> },

    #[error("series truncated at degree {available}, need at least {required}")]
    TruncationTooSmall { required: u32, available: u32 },

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("lattice points are not in increasing Kontsevich order")]
    OrderViolation,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
