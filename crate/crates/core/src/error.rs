use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error(
        "refusing to enumerate {what} on n={n} vertices: {states} states exceeds the configured cap n_max={max}"
    )]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
        states: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid model spec: {0}")]
    InvalidSpec(String),

    #[error("infeasible spec: m={m} exceeds the {available} {domain} pairs with positive mass")]
    Infeasible {
        m: usize,
        available: usize,
        domain: &'static str,
    },

    #[error("rejection sampler exceeded {cap} draws while placing edge {step}")]
    IterationCap { cap: u64, step: usize },

    #[error("degenerate vertex realization: {0}")]
    DegenerateRealization(String),

    #[error("approximate coupling needs pi(v,w)+pi(w,v) <= 1, got {sum} at pair ({v},{w})")]
    SummedProbabilityTooLarge { v: usize, w: usize, sum: f64 },

    #[error("mismatched operands: {0}")]
    Mismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
