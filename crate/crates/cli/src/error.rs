use std::process::ExitCode;

use thiserror::Error;

/// Failures mapped onto the exit-code contract: 1 usage or I/O, 2 failed
/// certification, 3 synthesis failure.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("synthesis failed: {0}")]
    Synthesis(pinchwork::Error),
    #[error("{0}")]
    Library(pinchwork::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Library(_) => 1,
            CliError::Certification(_) => 2,
            CliError::Synthesis(_) => 3,
        })
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

impl From<pinchwork::Error> for CliError {
    fn from(e: pinchwork::Error) -> Self {
        use pinchwork::Error::*;
        match e {
            MarginLost { .. } | HostTooSmall { .. } | NoConvergence { .. } | ValueOutsideRange { .. } => {
                CliError::Synthesis(e)
            }
            other => CliError::Library(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
