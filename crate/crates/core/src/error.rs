use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("word `{word}` is not in {space}")]
    Domain { word: String, space: &'static str },
    #[error("element is not in the span of single z-letters: `{0}`")]
    NotInZ(String),
    #[error("index `{0}` is not admissible (first part must be at least 2)")]
    NotAdmissible(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("index `{0}` consists only of ones")]
    AllOnes(String),
    #[error("tensor arity must be at least 2 (n >= 1), got n = {0}")]
    BadArity(usize),
    #[error("q must lie strictly between 0 and 1, got {0}")]
    QOutOfRange(f64),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("serialization error: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}
