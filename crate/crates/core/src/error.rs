use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("edge endpoint `{0}` is not a vertex label")]
    UnknownEndpoint(String),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("empty vertex label")]
    EmptyLabel,
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("dimension {d} exceeds the configured maximum {cap}")]
    DimensionCap { d: u32, cap: u32 },
    #[error("graph is disconnected ({} components, representatives: {})", .representatives.len(), .representatives.join(", "))]
    Disconnected { representatives: Vec<String> },
    #[error("{what}: graph has {n} vertices, limit is {limit}")]
    LimitExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("unknown problem `{0}` (expected gamma, gamma-p, dim or eta-p)")]
    UnknownProblem(String),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
