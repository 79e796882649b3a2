use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {0} is outside the unit interval [0, 1]")]
    PointOutOfRange(String),
    #[error("degenerate point pair: both points are {0}")]
    DegeneratePair(String),
    #[error("empty arc: both ends are {0}")]
    EmptyArc(String),
    #[error("chords {0} and {1} are identical")]
    IdenticalChords(String, String),
    #[error("duplicate chord name `{0}`")]
    DuplicateName(String),
    #[error("chord `{0}` duplicates an earlier chord")]
    DuplicateChord(String),
    #[error("diagram is not in generic position: point {0} is shared")]
    NotGeneric(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{what} supports at most {cap} vertices, got {n}")]
    TooLarge { what: &'static str, n: usize, cap: usize },
    #[error("vertex sets are not disjoint")]
    NotDisjoint,
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("recognizers disagree: brute force says {brute}, obstruction test says {obstruction}")]
    MethodDisagreement { brute: bool, obstruction: bool },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
