use thiserror::Error;

use crate::edgelist::EdgeListError;
use crate::graph6::Graph6Error;
use crate::weights::WeightsError;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    InputError = 1,
    Timeout = 2,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("graph6: {0}")]
    Graph6(#[from] Graph6Error),
    #[error("edge list: {0}")]
    EdgeList(#[from] EdgeListError),
    #[error("weights: {0}")]
    Weights(#[from] WeightsError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] defcol_core::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}
