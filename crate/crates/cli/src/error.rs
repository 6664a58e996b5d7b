use std::fmt;
use std::io;

use ferroflow_core::Error as CoreError;

/// Process exit statuses.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const FAIL: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const CAP: u8 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("writing output: {0}")]
    Output(#[source] io::Error),
}

impl CliError {
    pub fn usage(msg: impl fmt::Display) -> Self {
        CliError::Usage(msg.to_string())
    }

    pub fn io(path: impl fmt::Display, source: io::Error) -> Self {
        CliError::Io { path: path.to_string(), source }
    }

    /// A closed stdout pipe (`ferroflow ... | head`) is not worth reporting.
    pub fn is_broken_pipe(&self) -> bool {
        matches!(self, CliError::Output(e) if e.kind() == io::ErrorKind::BrokenPipe)
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_cap() => exit::CAP,
            // Bad parameters, loops where none are allowed and similar input
            // problems all count as usage errors.
            CliError::Core(_) | CliError::Usage(_) | CliError::Io { .. } => exit::USAGE,
            CliError::Output(_) => exit::FAIL,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;
