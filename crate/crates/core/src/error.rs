use thiserror::Error;

/// Everything that can go wrong while building or querying algebraic data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("duplicate identifier `{0}`")]
    Duplicate(String),

    #[error("path `{0}` does not compose")]
    NotComposable(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("relations do not bound the radical: J^{bound} is nonzero")]
    NotNilpotent { bound: usize },

    #[error("path count exceeds the cap of {cap}")]
    Budget { cap: usize },

    #[error("algebra is not monomial")]
    NotMonomial,

    #[error("path `{0}` is zero in the algebra")]
    ZeroPath(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
