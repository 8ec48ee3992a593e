use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("the language is empty")]
    EmptyLanguage,

    #[error("resource cap exceeded: {what} needs about {estimate}, cap is {cap}")]
    ResourceCap {
        what: &'static str,
        estimate: String,
        cap: String,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::EmptyLanguage => 2,
            Error::ResourceCap { .. } | Error::Overflow(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}
