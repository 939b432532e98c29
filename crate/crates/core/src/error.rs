use thiserror::Error;

use crate::network::{Link, NodeId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid demand range {lo}..={hi} (need 1 <= lo <= hi)")]
    InvalidRange { lo: u64, hi: u64 },

    #[error("node {node} is outside 1..={node_count}")]
    NodeOutOfRange { node: u32, node_count: usize },

    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(NodeId, NodeId),

    #[error("demand vector has {found} entries but the network has {expected} links")]
    DemandLength { expected: usize, found: usize },

    #[error("malformed document: {0}")]
    Malformed(#[from] serde_json::Error),

    #[error("link {0} does not exist in the network")]
    UnknownLink(Link),

    #[error("no demand record for link {0}")]
    MissingDemand(Link),

    #[error("more than one demand record for link {0}")]
    DuplicateDemand(Link),

    #[error("{what} has size {size}, above the exact-solver limit of {limit}; use the hwf or mdf heuristics instead")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("network is not bipartite (odd cycle through nodes {0:?})")]
    NotBipartite(Vec<u32>),

    #[error("cost penalty is undefined for a positive total against a zero optimum")]
    UndefinedPenalty,

    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
