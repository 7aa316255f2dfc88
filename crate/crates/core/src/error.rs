use std::time::Duration;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("T must contain 0")]
    TSetMissingZero,
    #[error("T must be strictly ascending without duplicates: {0}")]
    TSetNotAscending(String),
    #[error("T must not be empty")]
    TSetEmpty,
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("colouring has {found} colours but the graph has {expected} vertices")]
    ColouringLength { expected: usize, found: usize },
    #[error("colouring is empty")]
    EmptyColouring,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid family spec `{0}`")]
    FamilySpec(String),
    #[error("complete multipartite colouring needs at least two parts, got {0}")]
    TooFewParts(usize),
    #[error("part sizes must all be at least 1")]
    EmptyPart,
    #[error("brute force refused: {0}")]
    GuardExceeded(String),
    #[error("no valid colouring with span at most {max_span}")]
    NoColouringWithin { max_span: u32 },
    #[error(
        "search budget exceeded after {nodes} nodes in {elapsed:?}: span is in [{lower}, {}]",
        upper.map_or_else(|| "?".to_string(), |u| u.to_string())
    )]
    BudgetExceeded {
        lower: u32,
        upper: Option<u32>,
        nodes: u64,
        elapsed: Duration,
    },
}
