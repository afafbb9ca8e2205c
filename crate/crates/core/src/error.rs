use thiserror::Error;

/// Errors reported by the library.
///
/// The variants line up with the command-line exit codes: input and
/// validation problems exit with 2, capacity problems with 3 and internal
/// failures with 4.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("input error: {0}")]
    Input(String),
    /// A structurally valid object that fails a mathematical requirement,
    /// such as an unbalanced permutation group.
    #[error("validation error: {0}")]
    Validation(String),
    /// A computation that would exceed an enumeration or memory budget.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// A broken internal invariant.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    /// Prefixes the message, keeping the variant.
    pub fn context(self, prefix: impl std::fmt::Display) -> Self {
        match self {
            Error::Input(m) => Error::Input(format!("{prefix}: {m}")),
            Error::Validation(m) => Error::Validation(format!("{prefix}: {m}")),
            Error::Capacity(m) => Error::Capacity(format!("{prefix}: {m}")),
            Error::Internal(m) => Error::Internal(format!("{prefix}: {m}")),
        }
    }

    /// Process exit code associated with this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Validation(_) => 2,
            Error::Capacity(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
