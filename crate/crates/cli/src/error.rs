use thiserror::Error;

/// Failure of a CLI invocation, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or configuration, detected before any compute.
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl From<rcobs::Error> for CliError {
    fn from(e: rcobs::Error) -> Self {
        use rcobs::Error as E;
        match e {
            E::InvalidParameter(_) | E::DimensionMismatch(_) | E::WashoutTooLarge { .. } => {
                CliError::Validation(e.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
