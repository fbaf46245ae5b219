use thiserror::Error;

/// Errors raised by the library and reported by the command line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation was called with arguments outside its domain.
    #[error("usage error: {0}")]
    Usage(String),
    /// The input data is not acceptable (e.g. an incompatible descriptor).
    #[error("invalid input: {0}")]
    Input(String),
    /// Text did not conform to the expression grammar.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A documented precondition of an internal step does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Random instance generation gave up.
    #[error("generation failed: {0}")]
    Generation(String),
    /// A mathematical invariant failed; indicates a bug.
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code: 1 for input problems, 2 for invariant failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) | Error::Precondition(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
