use thiserror::Error;

/// Structural problems with a hypergraph or its text encoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("edge {edge} has {size} distinct vertices, at least 2 are required")]
    EdgeTooSmall { edge: usize, size: usize },
    #[error("edge {edge} contains vertex {vertex}, but n = {n}")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {edge} lists vertex {vertex} more than once")]
    DuplicateVertex { edge: usize, vertex: usize },
    #[error("edges given for a hypergraph with no vertices")]
    EmptyVertexSet,
    #[error("line {line}: malformed header, expected \"n m\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: {token:?} is not a non-negative integer")]
    NonInteger { line: usize, token: String },
    #[error("header declares {declared} edges, found {found}")]
    CountMismatch { declared: usize, found: usize },
}

/// Invalid generator parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("edge size {size} exceeds vertex count {n}")]
    EdgeLargerThanVertexSet { size: usize, n: usize },
    #[error("edge size {0} is below 2")]
    EdgeSizeTooSmall(usize),
}

/// Exhaustive enumeration refused because the instance is too large.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what} supports at most {limit} vertices, got {n}")]
pub struct TooLarge {
    pub what: &'static str,
    pub n: usize,
    pub limit: usize,
}

/// A bound was evaluated outside the domain where it is stated.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("domain error: {0}")]
pub struct DomainError(pub String);
