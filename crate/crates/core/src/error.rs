use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: expected `u v` or a single vertex token, found {content:?}")]
    MalformedLine { line: usize, content: String },

    #[error("self-loop on vertex {vertex:?}")]
    SelfLoop { vertex: String },

    #[error("edge relation contains a directed cycle through {vertex:?}")]
    CycleDetected { vertex: String },

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("unknown output format {0:?}")]
    UnknownFormat(String),

    #[error("downset lattice exceeded the cap of {cap} states")]
    StateCapExceeded { cap: usize },

    #[error("more than {cap} linear extensions")]
    ExtensionCapExceeded { cap: usize },

    #[error("extension set is truncated")]
    TruncatedInput,

    #[error("dimension exceeds {max_dim} (lower bound {lower_bound})")]
    DimExceedsMax { max_dim: usize, lower_bound: usize },

    #[error("report has no dimension")]
    MissingDim,

    #[error("report has no minimum fip count")]
    MissingMinFip,

    #[error("index {index} out of range for {len} nodes")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("nodes {from} and {to} are not connected")]
    Disconnected { from: usize, to: usize },

    #[error("bad generator spec {0:?}")]
    BadSpec(String),

    #[error("direct minimum fip {direct} disagrees with inc - led = {dual}")]
    IdentityMismatch { direct: usize, dual: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
