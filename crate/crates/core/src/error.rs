use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad ids, dangling incidences, inconsistent walks.
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// The input is well formed but an operation's precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A result failed an independent re-check.
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("enumeration budget exceeded: need {needed}, budget {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) | Error::Parse { .. } | Error::Precondition(_) => 2,
            Error::Verification(_) => 3,
            Error::Budget { .. } => 4,
            Error::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn verification<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Verification(msg.into()))
}
