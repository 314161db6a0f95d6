use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("invalid JSON in {path}: {message}")]
    Json { path: String, message: String },
    #[error("{0}")]
    Domain(String),
    #[error("segment {segment}: {source}")]
    Solver {
        segment: usize,
        #[source]
        source: ph_biarc::Error,
    },
    #[error("level {level}, segment {segment}: {source}")]
    Refinement {
        level: u32,
        segment: usize,
        #[source]
        source: ph_biarc::Error,
    },
    #[error("line {line}: {source}")]
    Input {
        line: usize,
        #[source]
        source: ph_biarc::Error,
    },
    #[error("{source} ({path})")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit code: 2 parse, 3 solver or degenerate input, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Json { .. } => 2,
            CliError::Domain(_) | CliError::Solver { .. } | CliError::Refinement { .. } | CliError::Input { .. } => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}
