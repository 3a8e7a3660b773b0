use thiserror::Error;

/// Errors surfaced by the library. The CLI maps each variant to an exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("capacity exceeded: {what} is {got}, limit is {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("empty embedding: {0} split clauses give n = 0")]
    EmptyEmbedding(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

/// Default limit on the number of variables for exhaustive checks.
pub const BRUTE_FORCE_CAP: usize = 24;

pub(crate) fn check_cap(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        Err(Error::Capacity { what, got, limit })
    } else {
        Ok(())
    }
}
