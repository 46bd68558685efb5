use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed group descriptor `{0}`: {1}")]
    Descriptor(String, String),

    #[error("malformed multiplication table: {0}")]
    Table(String),

    #[error("prime {0} is not supported (odd primes only)")]
    UnsupportedPrime(u64),

    #[error("group of order {order} exceeds the configured bound {bound}")]
    SizeBound { order: usize, bound: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid biset: {0}")]
    Biset(String),

    #[error("invalid coefficient system: {0}")]
    System(String),

    #[error("structure map is not natural at {section} ({map}): {detail}")]
    NotNatural {
        section: String,
        map: String,
        detail: String,
    },

    #[error("io error at {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
