use std::fmt;

/// Malformed text input (polynomials, tables, sequences, ANFs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    msg: String,
}

impl FormatError {
    pub fn new(msg: impl Into<String>) -> Self {
        FormatError { msg: msg.into() }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl std::error::Error for FormatError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("modulus must have degree at least 1")]
    InvalidModulus,
    #[error("no bundled factorization of 2^{0}-1; supply the prime factors")]
    UnsupportedDegree(usize),
    #[error("polynomial is not a primitive trinomial; supply seed entries")]
    UnsupportedSeed,
    #[error("degree {m} does not divide {n}")]
    InvalidSubfield { m: usize, n: usize },
    #[error("longest zero run is not unique")]
    AmbiguousZeroRun,
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("Zech table is inconsistent: {0}")]
    CorruptTable(String),
    #[error("Zech logarithm unknown for exponent {0}")]
    MissingEntry(String),
    #[error("invalid input: {0}")]
    Domain(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("graph is disconnected; unreached cycles: {0:?}")]
    Disconnected(Vec<usize>),
    #[error("format error: {0}")]
    Format(#[from] FormatError),
}

pub type Result<T> = std::result::Result<T, Error>;
