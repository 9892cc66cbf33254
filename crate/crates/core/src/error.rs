use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by graph construction, solving and instance handling.
#[derive(Debug, Error)]
pub enum GccfError {
    #[error("agent index {index} out of range for {n} agents")]
    InvalidAgentIndex { index: usize, n: usize },

    #[error("no edge between vertices {0} and {1}")]
    NoSuchEdge(usize, usize),

    #[error("edge ({0}, {1}) is red and cannot be contracted")]
    RedContractionForbidden(usize, usize),

    #[error("coalition is empty")]
    EmptyCoalition,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("budget must set a time limit or a node limit")]
    InvalidBudget,

    #[error("worker count must be at least 1")]
    InvalidWorkerCount,

    #[error("the edge-sum bound requires the edge-sum characteristic function")]
    IncompatibleBound,

    #[error("oracle supports at most {max} agents, got {n}")]
    InstanceTooLargeForOracle { n: usize, max: usize },

    #[error("{path}: {message}")]
    Ingest { path: PathBuf, message: String },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, GccfError>;

impl GccfError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        GccfError::Parse {
            line,
            message: message.into(),
        }
    }
}
