use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] sgbc::Error),

    /// Trace was written; the run diverged at `time`.
    #[error("state diverged at t = {time}")]
    BlowUp { time: f64 },

    #[error("design check failed: {0}")]
    DesignFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 1,
            CliError::Io { .. } => 2,
            CliError::BlowUp { .. } => 3,
            CliError::DesignFailed(_) => 4,
        }
    }
}
