use thiserror::Error;

use crate::setsys::SubsetMask;

/// Largest supported ground-set size.
pub const MAX_N: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground-set size {n} out of supported range 1..={max}")]
    GroundSetSize { n: usize, max: usize },
    #[error("set {mask} has elements outside 1..={n}")]
    MaskOutOfRange { mask: SubsetMask, n: usize },
    #[error("duplicate set {0}")]
    DuplicateSet(SubsetMask),
    #[error("family is not intersection-closed: {a} ∩ {b} is missing")]
    NotClosed { a: SubsetMask, b: SubsetMask },
    #[error("level {level} out of range 1..={n}")]
    LevelOutOfRange { level: usize, n: usize },
    #[error("{mask} is not a subset of [{bound}]")]
    NotPrefixSubset { mask: SubsetMask, bound: usize },
    #[error("{a} is not discarding at level {level}")]
    NotDiscarding { a: SubsetMask, level: usize },
    #[error("materializing {size} sets exceeds budget {budget}")]
    BudgetExceeded { size: u64, budget: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate family: {0}")]
    Degenerate(String),
    #[error("invalid permutation: {0}")]
    Permutation(String),
    #[error("n={n} exceeds the limit {limit} for {what}")]
    TooLarge { n: usize, limit: usize, what: &'static str },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
