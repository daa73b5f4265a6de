use alloc::string::String;

/// Errors raised by the algorithms in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("attribute row {row} has {got} values, expected {expected}")]
    AttributeShape { row: usize, expected: usize, got: usize },
    #[error("graph has no vertex attributes")]
    MissingAttributes,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("non-finite filtration value at vertex {0}")]
    NonFinite(usize),
    #[error("filtration is not injective: vertices {0} and {1} share a value; apply make_injective first")]
    NotInjective(usize, usize),
    #[error("filtration is not monotone: simplex {simplex} enters before its face {face}")]
    NotMonotone { simplex: usize, face: usize },
    #[error("simplicial complex is not closed: a face of simplex {0} is missing")]
    NotClosed(usize),
    #[error("duplicate simplex at position {0}")]
    DuplicateSimplex(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("step {h} reorders the filtration (minimal gap {gap})")]
    OrderChange { h: f64, gap: f64 },
    #[error("could not generate a sample after {0} attempts")]
    GenerationFailed(usize),
}

pub type Result<T> = core::result::Result<T, Error>;
