use thiserror::Error;

/// Errors shared by the matrix core, the checkers and the campaign driver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    NonConvergence { sweeps: usize, residual: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("invalid sample spec: {0}")]
    InvalidSpec(String),

    #[error("invalid campaign config: {0}")]
    Config(String),

    #[error("matrix file error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
