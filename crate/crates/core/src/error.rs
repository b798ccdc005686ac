use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("{value} is not invertible modulo {modulus} (gcd {gcd})")]
    NotInvertible { value: u64, modulus: u64, gcd: u64 },

    #[error("quaternion {0} is not invertible")]
    QuaternionNotInvertible(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported index {0}: only n >= -1 is defined")]
    UnsupportedIndex(i64),

    #[error("quaternions belong to different algebras")]
    AlgebraMismatch,

    #[error("unsupported representation: {0}")]
    UnsupportedRepresentation(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{what} {requested} exceeds the limit {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
