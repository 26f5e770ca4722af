use thiserror::Error;

/// Errors raised by constructions and file parsing.
///
/// Verification failures are not errors; they are returned as report data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("window too small: {0}")]
    Window(String),
    #[error("element cap {cap} exceeded: {what} would enumerate {needed} elements")]
    Resource {
        cap: usize,
        needed: u128,
        what: String,
    },
    #[error("not an arrow: {0}")]
    NotAnArrow(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Window(_) | Error::Resource { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn window(msg: impl Into<String>) -> Self {
        Error::Window(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
