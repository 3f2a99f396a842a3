use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("time grid is not uniform; resample the trace before transforming")]
    ResampleRequired,
    #[error("need at least {needed} samples, got {found}")]
    TooFewSamples { needed: usize, found: usize },
    #[error("{0}")]
    Precondition(String),
    #[error("no peak within 20% of the fundamental {fundamental} (nearest: {nearest:?})")]
    ClassificationFailed { fundamental: f64, nearest: Option<f64> },
    #[error("degenerate fit: all abscissae are equal")]
    DegenerateFit,
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Numeric(#[from] rabiwave_core::Error),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("{0}")]
    Partial(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 1 for usage, configuration and file problems, 2 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io { .. } | CliError::Parse { .. } => 1,
            CliError::Analysis(AnalysisError::Precondition(_) | AnalysisError::UnknownEntry(_)) => 1,
            CliError::Numeric(_) | CliError::Analysis(_) | CliError::Partial(_) => 2,
        }
    }
}
