//! Failure classes and their exit codes.

use lt_kernel::{ArithError, KernelError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or schema-violating input.
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        CliError::Kernel(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl CliError {
    /// `3` for broken math, `2` for everything the caller can fix.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Kernel(e) if e.is_internal() => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        if self.exit_code() == 3 {
            "internal"
        } else {
            "input"
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_internal_kernel_errors_exit_three() {
        assert_eq!(CliError::Kernel(KernelError::Consistency("x".into())).exit_code(), 3);
        assert_eq!(CliError::Kernel(KernelError::Malformed("x".into())).exit_code(), 2);
        assert_eq!(CliError::Input("x".into()).kind(), "input");
    }
}
