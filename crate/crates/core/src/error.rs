use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{name}` at {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("index out of range in `{name}` at {pos}")]
    IndexOutOfRange { name: String, pos: usize },
    #[error("undeclared parameter {0}")]
    ParamMismatch(String),
    #[error("scalar {0} is not invertible")]
    NotInvertible(String),
    #[error("form is not closed: d(a) = {0}")]
    NotClosed(String),
    #[error("relations are not preserved by A_t: {0}")]
    IncompatibleRelations(String),
    #[error("A_t is undefined on generator {0}")]
    NoHomotopy(String),
    #[error("invalid Lie data: {0}")]
    InvalidLieData(String),
    #[error("inconsistent Q family: {0}")]
    InconsistentQ(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
