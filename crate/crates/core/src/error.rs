use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid character '{ch}' at position {pos}")]
    InvalidCharacter { ch: char, pos: usize },

    #[error("invalid character '{ch}' at line {line}, position {pos}")]
    InvalidCharacterAt { ch: char, line: usize, pos: usize },

    #[error("manifest invariant violated: {0}")]
    InvalidManifest(String),

    #[error("timeline invariant violated: {0}")]
    InvalidTimeline(String),

    #[error("split spec invalid: {0}")]
    InvalidSplit(String),

    #[error("token sequence invalid: {0}")]
    InvalidTokenSequence(String),

    #[error("word '{word}' not segmentable with the current piece inventory")]
    Unsegmentable { word: String },

    #[error("brute-force limits exceeded: {0}")]
    OracleLimit(String),

    #[error("label index {index} out of range for {vocab} symbols")]
    LabelOutOfRange { index: usize, vocab: usize },

    #[error("objective is -inf; gradient undefined")]
    InfiniteObjective,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("lambda {0} outside [0, 1]")]
    LambdaOutOfRange(f64),

    #[error("empty reference; error rate undefined")]
    EmptyReference,

    #[error("malformed {what} at line {line}: {detail}")]
    MalformedFile {
        what: &'static str,
        line: usize,
        detail: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
