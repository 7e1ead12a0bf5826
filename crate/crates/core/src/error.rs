use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("pair ({0}, {0}) is a self-loop")]
    SelfLoop(usize),

    #[error("pair ({0}, {1}) is not an edge; deletion sets may only contain edges")]
    NotAnEdge(usize, usize),

    #[error("graph has {n} vertices, at most {max} supported here")]
    GraphTooLarge { n: usize, max: usize },

    #[error("graph is a cograph; no induced P4 to branch on")]
    AlreadyCograph,

    #[error("invalid P4 witness ({0}, {1}, {2}, {3})")]
    InvalidWitness(usize, usize, usize, usize),

    #[error("empty branching vector")]
    EmptyVector,

    #[error("branching vector entries must be positive")]
    ZeroInVector,

    #[error("brute-force budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("graph is not rule-free: {0}")]
    NotRuleFree(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
