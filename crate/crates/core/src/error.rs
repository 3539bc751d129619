use thiserror::Error;

/// Errors raised anywhere in the observer pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integration diverged at step {step}")]
    IntegrationDiverged { step: usize },

    #[error("signal has zero variance and cannot be normalized")]
    ZeroVariance,

    #[error("cannot estimate {what}: {reason}")]
    Estimation { what: &'static str, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degenerate network: {0}")]
    DegenerateNetwork(String),

    #[error("washout of {washout} samples leaves no rows out of {rows}")]
    WashoutTooLarge { washout: usize, rows: usize },

    #[error("regularized normal equations are not positive definite (use beta > 0)")]
    SingularFit,

    #[error("realization {realization}: {source}")]
    Run {
        realization: u64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
