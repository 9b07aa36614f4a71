use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid order for {what}: got {got}, need at least {min}")]
    InvalidOrder {
        what: &'static str,
        got: usize,
        min: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("edge ({0}, {1}) has an endpoint outside the vertex range")]
    EdgeOutOfRange(usize, usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("root {root} is not a vertex of a graph of order {n}")]
    RootOutOfRange { root: usize, n: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph has no cycle")]
    NoCycle,

    #[error("transformation ({a} -> {b}) not applicable: {reason}")]
    TransformNotApplicable { a: usize, b: usize, reason: String },

    /// The set of mappings is empty, so the average range is not defined.
    #[error("average undefined: no strong mappings exist (mapping count {mapping_count})")]
    UndefinedAverage { mapping_count: BigUint },

    #[error("order {n} exceeds the configured limit {cap}")]
    LimitExceeded { n: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
