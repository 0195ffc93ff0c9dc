use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distribution index {index} out of range (oracle holds {count})")]
    BadDistribution { index: usize, count: usize },
    #[error("sample count must be at least 1")]
    EmptyDraw,
    #[error("position {pos} out of range 1..={n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("handle was issued by oracle {handle}, not by oracle {oracle}")]
    ForeignHandle { handle: u64, oracle: u64 },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("support of {size} atoms exceeds the exhaustive-search guard of {guard}")]
    SupportTooLarge { size: usize, guard: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("construction failed: {0}")]
    Unsatisfiable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
