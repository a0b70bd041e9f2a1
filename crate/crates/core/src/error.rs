use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(char),

    #[error("alphabet needs at least 2 symbols, got {0}")]
    AlphabetTooSmall(usize),

    #[error("alphabet supports at most {max} symbols, got {got}")]
    AlphabetTooLarge { got: usize, max: usize },

    #[error("symbol {symbol:?} at position {position} is not in the alphabet")]
    ForeignSymbol { position: usize, symbol: char },

    #[error("sequence is empty")]
    EmptySequence,

    #[error("symbol id {0} is not defined by the alphabet")]
    UnknownSymbol(usize),

    #[error("text and pattern are encoded over different alphabets")]
    AlphabetMismatch,

    #[error("pattern length {m} exceeds text length {n}")]
    PatternLongerThanText { m: usize, n: usize },

    #[error("inconsistent counts r={r}, m={m}, n={n}; need r <= m <= n and m >= 1")]
    InvalidCounts { r: usize, m: usize, n: usize },

    #[error("counting engines disagree: {0}")]
    EngineDisagreement(String),

    #[error("malformed FASTA at line {line}: {reason}")]
    MalformedFasta { line: usize, reason: String },

    #[error("I/O error: {0}")]
    Io(String),

    #[error("invalid region {0:?}, expected START-END with 1 <= START <= END")]
    InvalidRegion(String),

    #[error("region {start}-{end} is outside record of length {len}")]
    RegionOutOfBounds {
        start: usize,
        end: usize,
        len: usize,
    },

    #[error("malformed index table: {0}")]
    MalformedTable(String),

    #[error("network access is disabled")]
    NetworkUnavailable,

    #[error("record {0:?} not found")]
    RecordNotFound(String),

    #[error("transport error: {0}")]
    Transport(String),

    #[error("invalid benchmark schedule: {0}")]
    InvalidSchedule(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
