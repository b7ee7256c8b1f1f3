use thiserror::Error;

use crate::root_system::Family;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("UnsupportedRank: {family} rank {rank}")]
    UnsupportedRank { family: Family, rank: usize },
    #[error("IntervalTooLarge: more than {cap} elements")]
    IntervalTooLarge { cap: usize },
    #[error("NoDominantRepresentative: {0}")]
    NoDominantRepresentative(String),
    #[error("NotReduced: word {0:?}")]
    NotReduced(Vec<usize>),
    #[error("XNotBelowW")]
    XNotBelowW,
    #[error("BadParams: {0}")]
    BadParams(String),
    #[error("UnsupportedCase: {0}")]
    UnsupportedCase(String),
    #[error("EliminationFailed: {equation}: residual {residual}")]
    EliminationFailed { equation: String, residual: String },
    #[error("ParseError: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
