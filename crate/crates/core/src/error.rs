use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid group specification: {0}")]
    InvalidGroup(String),

    #[error("element {element} does not belong to group {group}")]
    ElementMismatch { element: String, group: String },

    #[error("operands live over different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("invalid generating set: {0}")]
    InvalidGenerators(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("vertex {0} is not in the ball")]
    NotInBall(String),

    #[error("vertex {0} lies on the frontier")]
    FrontierVertex(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot mix exact and float scalars in one expression")]
    ModeMismatch,

    #[error("element {0} has finite order")]
    FiniteOrder(String),

    #[error("|omega| = 1, so g - omega is not invertible in l^1")]
    UnitModulus,

    #[error("not exactly in the Diff span: coefficient sum is {0}; use approximate_by_diff")]
    NotInDiffSpan(String),

    #[error("ill-posed problem: {0}")]
    IllPosed(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn param(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }
}
