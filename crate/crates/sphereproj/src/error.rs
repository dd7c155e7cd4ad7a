use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("letter {letter} out of range for rank {rank}")]
    LetterOutOfRange { letter: i16, rank: usize },

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("trivial word not allowed here")]
    TrivialWord,

    #[error("map is not an automorphism: {witness}")]
    NotAnAutomorphism { witness: String },

    #[error("inverse requires a verified automorphism")]
    NotInvertible,

    #[error("the given words do not form a basis: {0}")]
    InvalidBasis(String),

    #[error("edge set is not a forest")]
    NonForest,

    #[error("invalid marked graph: {0}")]
    InvalidGraph(String),

    #[error("search window exhausted (undecided): {0}")]
    Undecided(String),

    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
