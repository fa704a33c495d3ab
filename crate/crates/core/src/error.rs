use thiserror::Error;

use crate::field::FieldError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate arrow label `{0}`")]
    DuplicateArrow(String),
    #[error("arrows do not compose: `{0}`")]
    NotComposable(String),
    #[error("relation {index} is malformed: {reason}")]
    MalformedRelation { index: usize, reason: String },
    #[error("ideal is not admissible within degree cap {cap}")]
    NotAdmissible { cap: usize },
    #[error("more than {limit} paths of length <= {length}; quiver too large for the admissibility search")]
    PathExplosion { limit: usize, length: usize },
    #[error("matrix entry ({row}, {col}) lies outside its Peirce component")]
    MalformedEntry { row: usize, col: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("module is zero")]
    ZeroModule,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid module homomorphism: {0}")]
    InvalidHom(String),
    #[error("sequence is not exact: {0}")]
    NonExact(String),
    #[error("element is not in the radical")]
    NotInRadical,
    #[error("no e-bounded horizon found within depth {depth}")]
    HorizonNotReached { depth: usize },
    #[error("path is not a cycle")]
    NotACycle,
}
