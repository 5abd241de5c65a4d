//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{lower} is not below {upper}")]
    NotComparable { lower: String, upper: String },
    #[error("no Gorenstein chain: {0}")]
    NoChain(String),
    #[error("({0}, {1}) is not a clutter")]
    NotClutter(String, String),
    #[error("{0} is not in the interval")]
    NotInInterval(String),
    #[error("interval {0} is not Gorenstein")]
    NotGorenstein(String),
    #[error("interval {0} does not support the requested ideal")]
    BadIntervalForIdeal(String),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot expand: {0}")]
    NotExpandable(String),
    #[error("numerator reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
