use thiserror::Error;

/// Everything that can go wrong while building or parsing the objects in
/// this crate. Mathematical "no" answers (a system that is not circular, a
/// metric that is not Kalmanson) are *not* errors; operations report those
/// through their return values.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("invalid split system: {0}")]
    InvalidSystem(String),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("{what} supports {min} <= n <= {max}, got n = {got}")]
    SizeGuard {
        what: &'static str,
        min: usize,
        max: usize,
        got: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),
}
