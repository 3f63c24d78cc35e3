use std::path::PathBuf;

use thiserror::Error;

/// Failures before a verdict exists; all map to exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {msg}")]
    Parse { path: PathBuf, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(String),
}

impl CliError {
    pub fn parse(path: &std::path::Path, err: impl std::fmt::Display) -> Self {
        CliError::Parse {
            path: path.to_path_buf(),
            msg: err.to_string(),
        }
    }

    pub fn core(err: impl std::fmt::Display) -> Self {
        CliError::Core(err.to_string())
    }
}
