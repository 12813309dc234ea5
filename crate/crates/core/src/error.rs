use num_complex::Complex64;
use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// The hypotheses of a criterion or threshold do not hold for this input.
    #[error("not applicable: {reason}")]
    NotApplicable { reason: String, index: Option<usize> },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("unsupported degree {degree} (max {max})")]
    UnsupportedDegree { degree: usize, max: usize },

    /// The root finder did not reach the residual tolerance.
    #[error("root finder did not converge (worst backward error {worst_residual:e})")]
    Unconverged {
        partial: Vec<Complex64>,
        worst_residual: f64,
        member: Option<usize>,
    },

    #[error("invalid bracket [{lo}, {hi}]: {reason}")]
    Bracket { lo: f64, hi: f64, reason: String },

    #[error("marginal verdict persists near p = {at}")]
    MarginalZone { at: f64 },
}

impl Error {
    pub(crate) fn not_applicable(reason: impl Into<String>, index: Option<usize>) -> Self {
        Error::NotApplicable {
            reason: reason.into(),
            index,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
