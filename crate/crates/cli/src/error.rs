use thiserror::Error;

/// Everything that makes the CLI exit with status 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("session: {0}")]
    Session(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] frobenius_core::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}
