use std::path::PathBuf;

use ermetrics_core::ModelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed input; `line` and `column` are 1-based where known.
    #[error("{origin}:{line}{}: {message}", column.map(|c| format!(":{c}")).unwrap_or_default())]
    Parse {
        origin: String,
        line: usize,
        column: Option<usize>,
        message: String,
    },

    #[error("{origin}:{line}: {source}")]
    Assignment {
        origin: String,
        line: usize,
        #[source]
        source: ModelError,
    },

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error("no legal perturbation exists: {0}")]
    Unsatisfiable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
