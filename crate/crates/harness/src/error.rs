use mozeno_core::ModelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    /// Invalid or unreadable configuration; exit code 2.
    #[error("configuration error: {0}")]
    Config(String),
    /// Failure while running; exit code 3.
    #[error("runtime failure: {0}")]
    Runtime(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Runtime(_) => 3,
        }
    }

    pub(crate) fn io(context: &std::path::Path, e: std::io::Error) -> Self {
        HarnessError::Runtime(format!("{}: {e}", context.display()))
    }
}

impl From<ModelError> for HarnessError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::InvalidPlan(_) | ModelError::Inapplicable { .. } | ModelError::Io(_) => {
                HarnessError::Runtime(e.to_string())
            }
            _ => HarnessError::Config(e.to_string()),
        }
    }
}
