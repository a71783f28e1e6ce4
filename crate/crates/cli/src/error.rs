use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] slice_harmonic::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    /// 3 for exhausted enumeration budgets, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(slice_harmonic::Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(slice_harmonic::Error::BudgetExceeded { .. }) => "budget_exceeded",
            CliError::Io { .. } => "io",
            _ => "invalid_input",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": 1,
            "error": {
                "code": self.exit_code(),
                "kind": self.kind(),
                "message": self.to_string(),
            }
        })
    }
}
