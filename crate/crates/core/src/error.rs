use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("parallel edges {u}-{v} carry the same sign")]
    SameSignParallel { u: usize, v: usize },

    #[error("vertex {0} carries a negative loop; no circular colouring exists")]
    NegativeLoop(usize),

    #[error("invalid clique parameters p={p}, q={q} (need p even and p >= 2q > 0)")]
    InvalidParams { p: u32, q: u32 },

    #[error("colour {color} out of range for p={p}")]
    ColorOutOfRange { color: u32, p: u32 },

    #[error("the two signed graphs do not share an underlying multigraph")]
    UnderlyingMismatch,

    #[error("edge index {0} does not exist")]
    EdgeAbsent(usize),

    #[error("edge sequence is not a closed walk")]
    WalkNotClosed,

    #[error("no candidate fraction up to the ceiling {num}/{den} admits a colouring")]
    NoCandidate { num: u64, den: u64 },

    #[error("search deadline exceeded")]
    DeadlineExceeded,

    #[error("graph is colourable at p={p}, q={q}; there is no critical subgraph to extract")]
    Colorable { p: u32, q: u32 },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("assignment has {got} entries for a graph on {n} vertices")]
    AssignmentLength { got: usize, n: usize },
}
