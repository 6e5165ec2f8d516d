use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("inadmissible relation {relation:?}: {reason}")]
    InadmissibleRelation { relation: String, reason: String },
    #[error("algebra is not finite dimensional: dimension still growing at path length {max_len}")]
    NotFiniteDimensional { max_len: usize },
    #[error("multiplication table is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("idempotent {0} is not primitive: its corner algebra is not local")]
    IdempotentNotPrimitive(usize),
    #[error("no splitting idempotent found for a decomposable object; rerun with a larger prime")]
    DecompositionFailed,
    #[error("object is not concentrated in degrees -1 and 0")]
    NotTwoTerm,
    #[error("object is already silting, nothing to complete")]
    AlreadySilting,
    #[error("object is not presilting")]
    NotPresilting,
    #[error("summand index {0} out of range")]
    SummandMissing(usize),
    #[error("enumeration truncated: {0}")]
    Truncated(String),
    #[error("theorem violation detected: {0}")]
    TheoremViolation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
