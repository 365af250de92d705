use thiserror::Error;

#[derive(Debug, Error)]
pub enum PegsError {
    #[error("out of range: {0}")]
    Range(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = PegsError> = std::result::Result<T, E>;
