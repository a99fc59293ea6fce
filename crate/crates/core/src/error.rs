use thiserror::Error;

/// Errors shared across the crate. Variants mirror the failure modes of the
/// individual operations rather than wrapping a generic message everywhere,
/// so callers (and the CLI exit-code mapping) can match on them.
#[derive(Debug, Error)]
pub enum Error {
    /// An edge with the wrong arity or repeated vertices.
    #[error("non-uniform edge {edge:?}: expected {k} distinct vertices")]
    NonUniformEdge { k: u32, edge: Vec<u32> },

    /// A vertex id outside `0..n`.
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: u32, n: u32 },

    /// A precondition on the operation's parameters was violated.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The requested computation exceeds the configured budget.
    #[error("{what}: needs {needed} units, budget is {budget}")]
    TooLarge { what: &'static str, needed: u128, budget: u64 },

    /// A vertex weighting that was required to be a fractional vertex cover
    /// is not one; carries the first uncovered edge.
    #[error("not a fractional vertex cover: edge {edge:?} has weight sum {sum} < 1")]
    NotACover { edge: Vec<u32>, sum: String },

    /// A certificate referring to edges or vertices outside the hypergraph.
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Error {
        Error::InvalidParams(msg.into())
    }
}
