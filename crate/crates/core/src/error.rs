use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported modulus {0}: only prime fields are implemented")]
    UnsupportedModulus(u64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    Solver { sweeps: usize, residual: f64 },

    #[error("construction failed at level {level}: {reason}")]
    ConstructionFailed { level: usize, reason: String },

    #[error("sampling failed after {retries} rounds: {reason}")]
    Sampling { retries: usize, reason: String },

    #[error("oracle budget of {budget} node expansions exhausted")]
    OracleTimeout { budget: u64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
