use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("ordering is not a permutation of the tree's edges: {0}")]
    NotAPermutation(String),

    #[error("ordering violates prefix-connectivity at position {0}")]
    InvalidOrdering(usize),

    #[error("embedding is partial; unmapped tree vertices {0:?}")]
    PartialEmbedding(Vec<usize>),

    #[error("embedding is not injective: {0}")]
    NotInjective(String),

    #[error("instance too large for exhaustive search: {n} > limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
