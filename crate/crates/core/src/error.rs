use thiserror::Error;

/// Errors produced by the laboratory.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("empty cube")]
    EmptyCube,

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("weight not locally integrable: {0}")]
    NotIntegrable(String),

    #[error("not in {class} ({detail})")]
    NotInClass { class: String, detail: String },

    #[error("hypotheses not met: {0}")]
    Hypotheses(String),

    #[error("family exhausted: {0}")]
    FamilyExhausted(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// True for the integrability family of errors (weights that cannot be realized).
    pub fn is_integrability(&self) -> bool {
        matches!(self, Error::NotIntegrable(_) | Error::NotInClass { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
