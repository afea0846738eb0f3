use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet size {0} is outside 1..=256")]
    InvalidAlphabet(usize),

    #[error("character {ch} at index {index} is not in an alphabet of size {sigma}")]
    CharOutOfRange { ch: u8, index: usize, sigma: usize },

    #[error("pattern must contain at least one character")]
    EmptyPattern,

    #[error("cannot estimate frequencies from empty text")]
    EmptyText,

    #[error("invalid frequency table: {0}")]
    InvalidFrequencies(String),

    #[error("alphabet mismatch: {left} vs {right} characters")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("position {pos} is outside 0..={max}")]
    PositionOutOfRange { pos: usize, max: usize },

    #[error("last-position frontier is already at the pattern end ({0})")]
    FrontierExhausted(usize),

    #[error("pattern length {m} exceeds text length {n}")]
    PatternTooLong { m: usize, n: usize },

    #[error("invalid experiment: {0}")]
    InvalidSpec(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(
        "occurrence disagreement in cell (dist={dist}, sigma={sigma}, m={m}): \
         pattern #{pattern_index} (seed {pattern_seed:#018x}) found {left_count} times by {left} \
         but {right_count} times by {right}"
    )]
    Disagreement {
        dist: String,
        sigma: usize,
        m: usize,
        pattern_index: usize,
        pattern_seed: u64,
        left: &'static str,
        left_count: usize,
        right: &'static str,
        right_count: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
