use thiserror::Error;

/// Errors raised by the verification toolkit.
///
/// The variants split into two families. Everything except
/// [`Error::Certificate`] means the caller asked for something outside an
/// operation's contract. `Certificate` means an internal proof step failed on
/// input that satisfied every precondition, which would contradict the
/// mathematics being checked and is always reported verbatim.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid sequences: {0}")]
    InvalidSequences(String),

    #[error("modulus {m} is even")]
    EvenModulus { m: u64 },

    #[error("modulus {m} is divisible by {p}^2")]
    NotSquarefree { m: u64, p: u64 },

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("cannot split {m} as {left}*{right} with coprime factors")]
    BadSplit { m: u64, left: u64, right: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("certificate failure: {0}")]
    Certificate(String),
}

impl Error {
    /// True when the error reports a failed mathematical step rather than
    /// bad input.
    pub fn is_certificate_failure(&self) -> bool {
        matches!(self, Error::Certificate(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
