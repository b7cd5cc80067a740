use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Budget,
    Refused,
    Math,
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed input: {0}")]
    Input(String),
    #[error("series has a pole at t = 1 (infinite dimension)")]
    PoleAtOne,
    #[error("ungraded input: {0}")]
    Ungraded(String),
    #[error("budget exceeded in {what}: {progress}")]
    Budget { what: String, progress: String },
    #[error("ill-defined ring map: relation {0} is not sent to zero")]
    IllDefinedMap(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("window too small to decide: {0}")]
    WindowTooSmall(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::VariableMismatch(..)
            | Error::Parse(_)
            | Error::Input(_)
            | Error::Ungraded(_)
            | Error::IllDefinedMap(_)
            | Error::Io(_) => ErrorKind::Input,
            Error::Budget { .. } => ErrorKind::Budget,
            Error::Refused(_) => ErrorKind::Refused,
            Error::PoleAtOne | Error::WindowTooSmall(_) => ErrorKind::Math,
            Error::Inconsistent(_) => ErrorKind::Internal,
        }
    }

    pub fn budget(what: impl Into<String>, progress: impl Into<String>) -> Self {
        Error::Budget { what: what.into(), progress: progress.into() }
    }
}
