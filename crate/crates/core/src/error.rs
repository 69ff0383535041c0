use thiserror::Error;

use crate::vertex::Vertex;

/// Errors raised by the graph and matrix operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(Vertex),

    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(Vertex),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("row {row} has length {len}, expected {expected}")]
    RaggedMatrix {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("principal submatrix is singular; pivot is undefined")]
    SingularPivot,

    #[error("operation requires a graph without loops")]
    NotSimple,

    #[error("vertex `{0}` has no loop")]
    NotLooped(Vertex),

    #[error("`{u}` and `{v}` are not adjacent")]
    NotAnEdge { u: Vertex, v: Vertex },

    #[error("pivot endpoint `{0}` carries a loop")]
    LoopedEndpoint(Vertex),

    #[error("pivot endpoints must be distinct (got `{0}` twice)")]
    DegeneratePivot(Vertex),

    #[error("operation {index} ({op}) is not applicable: {reason}")]
    NotApplicable {
        index: usize,
        op: String,
        reason: Box<Error>,
    },

    #[error("no applicable sequence has this support (determinant is 0)")]
    NoSequence,

    #[error("anchor `{0}` is not in the support")]
    AnchorNotInSupport(Vertex),

    #[error("no applicable operation touches anchor `{0}`")]
    AnchorUnreachable(Vertex),

    #[error("odd number of arguments ({0})")]
    OddCount(usize),

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("symbol `{symbol}` occurs {count} times; expected exactly 2")]
    MalformedWord { symbol: Vertex, count: usize },

    #[error("operations {first} and {second} are not on four distinct loop-free vertices with uv and wz edges")]
    CommutationPrecondition { first: String, second: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for failures that come from the mathematics (an operation that is
    /// not applicable, a singular submatrix) rather than from malformed input.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::SingularPivot
                | Error::NotSimple
                | Error::NotLooped(_)
                | Error::NotAnEdge { .. }
                | Error::LoopedEndpoint(_)
                | Error::NotApplicable { .. }
                | Error::NoSequence
                | Error::AnchorUnreachable(_)
        )
    }
}
