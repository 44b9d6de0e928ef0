use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("tree is not binary")]
    NotBinary,

    #[error("edge {0} is not an internal edge of the tree")]
    NoSuchEdge(String),

    #[error("permutation moves label 0, but only the stabiliser of 0 acts here")]
    MovesRoot,

    #[error("invalid bracket expression: {0}")]
    InvalidBracket(String),

    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),

    #[error("boundary of boundary is nonzero in degree {degree}: {detail}")]
    BoundarySquared { degree: usize, detail: String },

    #[error("homology in degree {degree} is not free: torsion {torsion:?}")]
    Torsion { degree: usize, torsion: Vec<String> },

    #[error("chain is not a cycle in degree {0}")]
    NotACycle(usize),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("character mismatch: {0}")]
    CharacterMismatch(String),

    #[error("exactness failure: {0}")]
    Exactness(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
