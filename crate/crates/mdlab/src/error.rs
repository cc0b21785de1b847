//! Error type shared by all modules, with the CLI exit-code mapping.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside an operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs that are individually valid but mutually inconsistent
    /// (e.g. a coefficient table built for a different memory parameter).
    #[error("inconsistent inputs: {0}")]
    Consistency(String),

    /// Numeric failure at run time: degenerate path, underflowed tail.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Bad configuration: unknown key, unparsable value, invalid grid.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code: 1 usage/validation, 2 numeric failure, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Consistency(_) | Error::Config(_) => 1,
            Error::Numeric(_) => 2,
            Error::Io(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
