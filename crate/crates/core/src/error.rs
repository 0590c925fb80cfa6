use std::fmt;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A 64-bit integer computation would wrap.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// A computation would exceed a fixed size budget.
    #[error("{what} of {requested} exceeds the budget of {limit}")]
    Budget { what: &'static str, requested: u128, limit: u128 },

    /// Malformed set text or sumset expression. `pos` is 1-based.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unbound name `{0}`")]
    Unbound(String),

    /// A construction's claims did not survive exact evaluation.
    #[error("verification failed: {0}")]
    Verification(String),

    /// The requested parameter combination has no implemented construction.
    #[error("unsupported case: {0}")]
    Unsupported(UnsupportedCase),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Structured description of a construction request that the builders decline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsupportedCase {
    pub construction: &'static str,
    pub reason: String,
}

impl fmt::Display for UnsupportedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.construction, self.reason)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
