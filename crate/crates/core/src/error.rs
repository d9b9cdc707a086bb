use thiserror::Error;

/// Errors produced by the set, counting, recurrence and detection routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("sequence indices start at 1")]
    ZeroIndex,

    #[error("the two-parameter formulas require p < q (got p = {p}, q = {q})")]
    RequiresPLessThanQ { p: u32, q: u32 },

    #[error("oracle range exceeded: n = {n} is above the enumeration ceiling {ceiling}")]
    OracleRangeExceeded { n: u32, ceiling: u32 },

    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),

    #[error("insufficient prefix: need at least {needed} terms, got {got}")]
    InsufficientPrefix { needed: usize, got: usize },

    #[error("non-integral term produced at offset {offset}")]
    NonIntegralTerm { offset: usize },

    #[error("table too short: need more than {order} terms, got {got}")]
    TableTooShort { order: usize, got: usize },

    #[error("index {m} is outside the table (last index {last})")]
    IndexOutOfRange { m: u32, last: u32 },

    #[error("prefix too short for requested max_order: need at least {needed} terms, got {got}")]
    PrefixTooShort { needed: usize, got: usize },
}

impl Error {
    /// True for errors raised by the enumeration resource guard.
    pub fn is_resource_guard(&self) -> bool {
        matches!(self, Error::OracleRangeExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
