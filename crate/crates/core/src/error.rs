use thiserror::Error;

/// Errors raised by the index-set, graph and evaluation routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("tuple {tuple} violates the {group} constraints")]
    ConstraintViolation { tuple: String, group: String },

    #[error("coordinate out of domain: {0}")]
    Domain(String),

    #[error("pooled basis has no value for one-particle index {0}")]
    MissingSeed(String),

    #[error("tuple {0} is not a node of the graph")]
    UnknownTuple(String),

    #[error("tuple {0} is not a target node; coefficients on auxiliary or seed nodes are not allowed")]
    NotTarget(String),

    #[error("malformed input at byte {offset}: {message}")]
    Malformed { offset: usize, message: String },

    #[error("unsupported format version {0:?}")]
    UnsupportedVersion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
