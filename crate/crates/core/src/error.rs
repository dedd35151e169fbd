use thiserror::Error;

/// Crate-wide error type.
///
/// `QuotaExceeded`, `CycleDetected` and `IterationBudgetExceeded` signal that
/// an algorithm violated a bound the model promises to keep; they are test
/// assertions rather than recoverable conditions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("machine {machine} exceeded its per-round {kind} quota of {quota}")]
    QuotaExceeded {
        machine: u32,
        kind: &'static str,
        quota: u64,
    },
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("input graph is not a forest")]
    NotAForest,
    #[error("input graph is not a union of cycles")]
    NotACycleGraph,
    #[error("pointer jumping did not reach a fixpoint; parent map contains a cycle")]
    CycleDetected,
    #[error("vertices {0} and {1} are in different components")]
    DifferentComponents(u32, u32),
    #[error("{0} is not an ancestor of {1}")]
    NotAncestor(u32, u32),
    #[error("range [{i}, {j}] out of bounds for length {len}")]
    OutOfRange { i: usize, j: usize, len: usize },
    #[error("iteration budget of {0} exceeded")]
    IterationBudgetExceeded(u32),
    #[error("contracted component of size {0} exceeds single-machine capacity {1}")]
    ComponentTooLarge(usize, usize),
    #[error("configuration error: {0}")]
    ConfigError(String),
    #[error("compared runs use different inputs: {0}")]
    InputMismatch(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
