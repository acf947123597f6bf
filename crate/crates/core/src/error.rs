use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid profile: {0}")]
    Profile(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("integration failed at t = {t}: {reason}")]
    Integration { t: f64, reason: String },

    /// The warping function vanished, so the model surface closes up.
    #[error("warping function has a zero at t = {t}; the model is compact")]
    CompactModel { t: f64 },

    #[error("no convergence up to horizon {horizon}")]
    NonConvergence { horizon: f64 },

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("unknown gallery entry `{0}`")]
    Lookup(String),

    #[error("bad samples (row {row}): {msg}")]
    Ingest { row: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
