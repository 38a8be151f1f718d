use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("instance too large for exhaustive search: n = {n}, limit is {max}")]
    Capacity { n: usize, max: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed instance: {0}")]
    Structure(String),

    #[error("no published default parameters for {0}")]
    NoDefault(String),

    #[error("training diverged at step {step}: parameters became non-finite")]
    TrainingDiverged { step: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
