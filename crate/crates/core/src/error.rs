use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex `{0}` already exists")]
    DuplicateVertex(String),
    #[error("vertex `{0}` does not exist")]
    UnknownVertex(String),
    #[error("invalid energy {energy} for vertex `{id}`: must be finite and > 0")]
    InvalidEnergy { id: String, energy: f64 },
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("link {u} -> {v} has non-positive distance {distance}")]
    NonPositiveDistance { u: String, v: String, distance: f64 },
    #[error("vertex name must be nonempty")]
    EmptyName,

    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid topology: {0}")]
    Semantic(String),

    #[error("vertex `{0}` is not spanned by the tree")]
    NotInTree(String),
    #[error("branch energy is undefined for the root `{0}`")]
    LeafIsRoot(String),
    #[error("tree rooted at `{0}` has no non-root node")]
    SingletonTree(String),
    #[error("residual energy {0} is not positive")]
    NonPositiveResidual(f64),
    #[error("vertex `{0}` is unreachable from the root")]
    UnreachableNode(String),
    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("no candidate root spans the whole graph")]
    NoSpanningCandidate,
    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
