use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),

    #[error("operands are over different alphabets")]
    AlphabetMismatch,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("size {size} exceeds the configured cap of {cap}")]
    SizeLimit { size: usize, cap: usize },

    #[error("out of scope: {0}")]
    Scope(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
