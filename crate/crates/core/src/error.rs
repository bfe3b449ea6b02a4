use thiserror::Error;

use crate::net_model::NodeId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph not strongly connected: node {to} unreachable from node {from}")]
    NotStronglyConnected { from: usize, to: usize },

    #[error("gravity traffic needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("source and destination coincide at node {0}")]
    SameEndpoints(NodeId),

    #[error("node {dst} unreachable from node {src}")]
    Unreachable { src: NodeId, dst: NodeId },

    #[error("group size {size} out of range 1..={nodes}")]
    GroupSize { size: usize, nodes: usize },

    #[error("demand ids differ between candidate sets")]
    DemandMismatch,

    #[error("demand {0} has an empty candidate set")]
    EmptyCandidates(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("solution listing line {line}: {message}")]
    Listing { line: usize, message: String },

    #[error("missing variable {0} in solution listing")]
    MissingVariable(String),

    #[error("non-unique assignment for demand {0}")]
    NonUniqueAssignment(usize),

    #[error("no candidate selected for demand {0}")]
    NoAssignment(usize),

    #[error("model is infeasible")]
    Infeasible,

    #[error("solver reported status {0:?}")]
    SolverStatus(String),

    #[error("command not found: {0}")]
    CommandNotFound(String),

    #[error("solver exited with {status}: {stderr}")]
    SolverFailed { status: String, stderr: String },

    #[error("search limit exceeded: {0}")]
    SearchLimit(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
