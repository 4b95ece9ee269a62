use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pfaffian requires even dimension (got {0})")]
    OddDimension(usize),

    #[error("empty window [{lo}, {hi}]")]
    EmptyWindow { lo: i64, hi: i64 },

    #[error("degree {degree} outside window [{lo}, {hi}]")]
    OutsideWindow { degree: i64, lo: i64, hi: i64 },

    #[error("insufficient window: {0}")]
    InsufficientWindow(String),

    #[error("expansion order {given} too small, at least {required} required")]
    InsufficientOrder { required: usize, given: usize },

    #[error("truncation bound {given} too small, at least {required} required")]
    TruncationTooSmall { required: i32, given: i32 },

    #[error("{0} must be odd")]
    NotOdd(u32),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
