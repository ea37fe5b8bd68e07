use thiserror::Error;

/// Errors surfaced by graph construction, parsing, and the exact kernels.
#[derive(Debug, Error)]
pub enum Error {
    /// Two objects that must share a size do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// An operation was asked to run beyond its documented size budget.
    #[error("{what} supports n <= {limit}, got n = {n}")]
    Capacity {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    /// Vertex counts must lie in `1..=MAX_VERTICES`.
    #[error("vertex count must be in 1..={max}, got {n}")]
    VertexCount { n: usize, max: usize },

    /// The projections are only defined for graphs with at least two vertices.
    #[error("cannot project a graph with a single vertex")]
    ProjectionUnderflow,

    /// A model parameter violated its positivity requirement.
    #[error("{name} must be a positive rational (the model weights are only normalizable for {name} > 0), got {value}")]
    NonPositive { name: &'static str, value: String },

    /// Malformed textual input (graphs, permutations, rationals).
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
