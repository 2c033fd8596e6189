use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{value} has no multiplicative inverse modulo {modulus}")]
    NoInverse { value: u64, modulus: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(
        "feedback polynomial with taps {taps:?} is not primitive: period {period} < {expected}"
    )]
    NonPrimitivePolynomial {
        taps: Vec<u32>,
        period: usize,
        expected: usize,
    },

    #[error("no preferred pair exists for degree {0} (degree divisible by 4)")]
    NoPreferredPair(u32),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("family has {available} sequences but {required} base sequences are required")]
    InsufficientFamily { required: usize, available: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("dense matrix of {rows}x{cols} = {entries} entries exceeds limit of {limit}")]
    TooLarge {
        rows: usize,
        cols: usize,
        entries: usize,
        limit: usize,
    },

    #[error("support of size {support} exceeds the {rows} available measurements")]
    OverdeterminedSupport { support: usize, rows: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfiguration(msg.into())
    }
}
