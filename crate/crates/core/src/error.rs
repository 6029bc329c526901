//! Error type shared by every module.

use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid shape: n = {n}, d = {d} (need n >= 1)")]
    InvalidShape { n: usize, d: usize },
    #[error("configuration does not fit the shape: {0}")]
    ShapeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("vertex {0} is stable and cannot be toppled")]
    VertexStable(String),
    #[error("configuration is not stable")]
    NotStable,
    #[error("configuration is not sorted")]
    NotSorted,
    #[error("configuration is not recurrent")]
    NotRecurrent,
    #[error("configuration has a negative entry")]
    Negative,
    #[error("configuration is not compact")]
    NotCompact,
    #[error("word is not a Schröder word: {0}")]
    NotSchroder(String),
    #[error("word has the wrong letter counts: {0}")]
    LetterCount(String),
    #[error("expected a {expected} trace, found {found}")]
    ModeMismatch { expected: String, found: String },
    #[error("invalid ITC sequence: {0}")]
    InvalidSequence(String),
    #[error("polyomino is not valid: {0}")]
    InvalidPolyomino(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("evaluation point is degenerate: {0}")]
    DegeneratePoint(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
