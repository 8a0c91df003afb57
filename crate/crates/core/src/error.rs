use alloc::string::String;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph has no edges")]
    NoEdges,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph on {n} vertices exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("bad parameters for `{name}`: {reason}")]
    BadParameters { name: String, reason: String },

    #[error("matrix is not square or does not match the graph order")]
    DimensionMismatch,

    #[error("matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },

    #[error("matrix entry ({row}, {col}) violates the compatibility constraints")]
    IncompatibleEntry { row: usize, col: usize },

    #[error("colouring covers {got} vertices, expected {expected}")]
    PartialColouring { got: usize, expected: usize },

    #[error("colour 0 at vertex {0}; colours are positive integers")]
    ZeroColour(usize),

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("degenerate bound: {0}")]
    Degenerate(String),

    #[error("linear program failed: {0}")]
    LinearProgram(String),

    #[error("internal certification failed: {0}")]
    Certification(String),
}
