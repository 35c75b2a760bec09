use thiserror::Error;

/// Errors raised by the planning model, plan validation and front generators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("value {0} is not an exact multiple of 0.1")]
    NotRepresentable(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("action {action} is not applicable: missing precondition {missing}")]
    Inapplicable { action: String, missing: String },

    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    #[error("cannot build a Pareto front from an empty point set")]
    EmptyFront,

    #[error("unsupported configuration for the analytic front: {0}")]
    UnsupportedConfig(String),

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for ModelError {
    fn from(e: std::io::Error) -> Self {
        ModelError::Io(e.to_string())
    }
}
