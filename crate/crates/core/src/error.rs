use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cell ({n},{k}) is zero")]
    ZeroCell { n: u64, k: u64 },

    #[error("{value} exceeds the sieve limit {limit}")]
    OutOfRange { value: u64, limit: u64 },

    #[error("dense snapshot of {rows} rows exceeds the cap of {cap}")]
    SnapshotTooLarge { rows: u64, cap: u64 },

    #[error("point ({x},{y}) was reached twice")]
    DuplicateVisit { x: i64, y: i64 },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
