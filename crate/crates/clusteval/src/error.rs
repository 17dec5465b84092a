use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    /// The graph (or what is left of it after preprocessing) has no nodes.
    #[error("graph is empty")]
    EmptyGraph,

    #[error("{path}: no usable communities after filtering")]
    EmptyCover { path: PathBuf },

    #[error("cover contains an empty cluster")]
    EmptyCluster,

    #[error("node id {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("covers span different node sets ({left} vs {right} nodes)")]
    NodeSetMismatch { left: usize, right: usize },

    /// A metric precondition failed, e.g. modularity on a zero-edge graph.
    #[error("undefined input: {0}")]
    UndefinedInput(String),

    /// Spearman's coefficient over a constant vector.
    #[error("rank correlation undefined: input vector is constant")]
    ConstantVector,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("need at least {need} clusterings, found {found}")]
    TooFewClusterings { found: usize, need: usize },
}
