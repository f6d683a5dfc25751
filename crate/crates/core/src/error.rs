use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: malformed line: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: non-positive weight {weight}")]
    NonPositiveWeight { line: usize, weight: f64 },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: vertex {v} exceeds declared vertex count {n}")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("invalid edge ({u}, {v}, {weight}): {reason}")]
    InvalidEdge {
        u: usize,
        v: usize,
        weight: f64,
        reason: &'static str,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("{what} cap exceeded: {actual} > {cap}")]
    CapExceeded {
        what: &'static str,
        actual: u128,
        cap: u128,
    },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("route for pair ({u}, {v}) is not a simple path of the graph: {reason}")]
    InvalidRoute {
        u: usize,
        v: usize,
        reason: &'static str,
    },
    #[error("no route assigned to pair ({u}, {v})")]
    PartialAssignment { u: usize, v: usize },
    #[error("path choice function is inconsistent ({count} violations)")]
    Inconsistent { count: usize },
    #[error("consistency repair failed: {0}")]
    RepairFailed(String),
    #[error("path choice function is not cost-dominated")]
    NotCostDominated,
    #[error("distances are not ordered pointwise (small must be <= large)")]
    NotComparable,

    #[error("simplex budget exceeded: {required} simplices required (top dimension alone C({n},{size}) = {top}), cap is {cap}")]
    SimplexBudget {
        required: u128,
        cap: u128,
        n: usize,
        size: usize,
        top: u128,
    },
    #[error("homology dimension {k} out of range (max_dim = {max_dim}, need k < max_dim)")]
    DimensionOutOfRange { k: usize, max_dim: usize },
    #[error("spanning tree does not span: {edges} edges for {vertices} vertices")]
    NotSpanning { edges: usize, vertices: usize },
    #[error("theorem holds in dimension {0}; counterexample search requires k >= 2")]
    TheoremHolds(usize),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
