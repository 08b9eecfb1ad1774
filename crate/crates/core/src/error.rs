use thiserror::Error;

use crate::graph::Edge;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("input contains no edges")]
    EmptyInput,

    #[error("edge {0} is not in the graph")]
    MissingEdge(Edge),

    #[error("node {node} is out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("effective resistance is undefined for identical endpoints ({0}, {0})")]
    SameEndpoint(usize),

    #[error("edge ({0}, {1}) is a bridge; use the bridge split update instead of Sherman-Morrison")]
    BridgeEdge(usize, usize),

    #[error("edge ({0}, {1}) was not a bridge: endpoints are still connected")]
    NotABridge(usize, usize),

    #[error("graph is disconnected ({0} components)")]
    Disconnected(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("budget k = {k} exceeds edge count m = {m}")]
    BudgetTooLarge { k: usize, m: usize },

    #[error("enumeration of C({m}, {k}) candidates exceeds the limit of {limit}")]
    EnumerationLimit { m: usize, k: usize, limit: u128 },

    #[error("measure {0} cannot be optimized by edge deletion")]
    UnsupportedMeasure(&'static str),

    #[error("edge set is empty")]
    EmptyEdgeSet,

    #[error("solution family is empty")]
    EmptyFamily,
}
