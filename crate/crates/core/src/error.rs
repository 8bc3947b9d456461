use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input document.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("duplicate arrow id `{0}`")]
    DuplicateArrowId(String),

    #[error("arrow `{id}` has endpoint {endpoint} outside 1..={vertices}")]
    EndpointOutOfRange {
        id: String,
        endpoint: usize,
        vertices: usize,
    },

    #[error("unknown arrow id `{0}`")]
    UnknownArrow(String),

    #[error("vertex {vertex} outside 1..={vertices}")]
    VertexOutOfRange { vertex: usize, vertices: usize },

    #[error("a biquiver needs at least one vertex")]
    NoVertices,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("expected a vector of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("biquiver is not connected")]
    Disconnected,

    #[error("representations are over different biquivers")]
    BiquiverMismatch,

    #[error("root enumeration needs an explicit coordinate bound here: {0}")]
    BoundRequired(&'static str),

    #[error("biquiver is not representation-finite")]
    NotFinite,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by a violated precondition of an otherwise
    /// well-formed request (as opposed to malformed or invalid input).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Disconnected
                | Error::BiquiverMismatch
                | Error::BoundRequired(_)
                | Error::NotFinite
                | Error::Singular
                | Error::NotSymmetric
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
