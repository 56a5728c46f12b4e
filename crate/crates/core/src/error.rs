use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("line {line}: {msg}")]
    Scenario { line: usize, msg: String },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("insufficient terms: need at least {needed}, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
    #[error("denominator has zero constant term")]
    ZeroConstantTerm,
    #[error("singular substitution: {0}")]
    SingularSubstitution(String),
    #[error("violated precondition: {0}")]
    Precondition(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
    #[error("term {index} has negative exponent {exponent}; not an ordinary polynomial")]
    NotOrdinaryPolynomial { index: usize, exponent: i64 },
    #[error("orbit `{orbit}` has no `{channel}` channel")]
    MissingChannel { orbit: String, channel: String },
    #[error("orbit `{orbit}`: channel `{channel}` does not cover exponent {exponent}")]
    Coverage {
        orbit: String,
        channel: String,
        exponent: i64,
    },
    #[error("index {index} is below the quasipolynomial start {start}")]
    BelowStart { index: usize, start: usize },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("positivity violation: {0}")]
    Positivity(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
