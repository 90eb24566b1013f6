use std::fmt;

/// Errors raised by the library, grouped by what the caller can do about them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed arguments: bad ids, violated preconditions, invalid parameters.
    Input(String),
    /// The graph does not have the required shape (e.g. not 2-connected, not 3-regular).
    Structure(String),
    /// The instance is outside the solvable class (e.g. not outerplanar).
    Domain(String),
    /// A configured size cap was exceeded.
    Size(String),
    /// Degenerate case the caller must special-case (single-inner-face dual).
    Degenerate(String),
    /// An internal invariant failed; indicates a bug or corrupted input.
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(msg) => write!(f, "input error: {msg}"),
            Error::Structure(msg) => write!(f, "structure error: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Size(msg) => write!(f, "size error: {msg}"),
            Error::Degenerate(msg) => write!(f, "degenerate case: {msg}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
