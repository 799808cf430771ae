use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller passed an argument outside the operation's domain.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// An object failed one of its structural invariants (d∘d ≠ 0, bad dimensions, ...).
    #[error("structural error: {0}")]
    Structural(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    /// A self-check performed while building a presentation did not hold.
    #[error("audit failure: {0}")]
    Audit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! arg_err {
    ($($t:tt)*) => { $crate::error::Error::Argument(format!($($t)*)) };
}
pub(crate) use arg_err;
