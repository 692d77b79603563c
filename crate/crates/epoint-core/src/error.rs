use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A numeric input was NaN or infinite.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Model parameters violate a construction gate (degenerate spectra,
    /// commuting parts, out-of-range values).
    #[error("model validation failed: {0}")]
    ModelValidation(String),

    /// An operation was called outside its stated precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The model sits in a degenerate family where the requested quantity
    /// is undefined (e.g. no exceptional points exist).
    #[error("degenerate model: {0}")]
    DegenerateModel(String),

    /// A loop path passes too close to an exceptional point for branch
    /// tracking to be reliable.
    #[error("path degeneracy: {0}")]
    PathDegeneracy(String),

    /// Branch tracking exhausted its refinement budget.
    #[error("branch tracking failure: {0}")]
    TrackingFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
