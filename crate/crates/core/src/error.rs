//! Error type shared across the crate.

use std::fmt;

/// Errors surfaced by library operations. The CLI maps these onto process
/// exit codes (usage = 2, data = 3, unsupported group = 4).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller violated an operation contract.
    Usage(String),
    /// Malformed input data (words, codes, JSON, fixtures).
    Data(String),
    /// The group class or coefficient mode is outside the supported set.
    UnsupportedGroup(String),
    /// An actuality table is missing the cell for a diagram.
    MissingCell { level: usize, key: String },
    /// A trace event refers to a route outside the weight system's ball.
    OutOfBall { route: String },
    /// A trace's order does not match the weight system's order.
    OrderMismatch { expected: usize, found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::Data(msg) => write!(f, "data error: {msg}"),
            Error::UnsupportedGroup(msg) => write!(f, "unsupported group: {msg}"),
            Error::MissingCell { level, key } => {
                write!(f, "actuality table has no cell at level {level} for diagram {key}")
            }
            Error::OutOfBall { route } => {
                write!(f, "trace event route {route} lies outside the weight system's ball")
            }
            Error::OrderMismatch { expected, found } => {
                write!(f, "trace order {found} does not match weight system order {expected}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
