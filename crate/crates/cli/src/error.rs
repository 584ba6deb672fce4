use shrinkage_core::ShrinkageError;
use thiserror::Error;

/// Failure of a CLI command, split by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, malformed input or invalid hyperparameters (exit 2).
    #[error("{0}")]
    Usage(String),
    /// Sampler or output failure after validation succeeded (exit 3).
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }

    pub fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn runtime(e: impl std::fmt::Display) -> Self {
        CliError::Runtime(e.to_string())
    }
}

/// Errors raised while validating inputs.
impl From<ShrinkageError> for CliError {
    fn from(e: ShrinkageError) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
