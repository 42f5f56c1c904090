use thiserror::Error;

/// Errors surfaced by the arithmetic, enclosure and verification layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("budget exceeded: {what} needs {requested}, configured limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u64,
        limit: u64,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("prime table covers primes up to {limit}, {needed} required")]
    TableTooSmall { limit: u64, needed: u64 },
    #[error("index {0} is outside the configured range")]
    OutOfRange(u64),
    #[error("epsilon {0} is a critical value: two exponent vectors tie")]
    CriticalEpsilon(String),
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
