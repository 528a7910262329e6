//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by the scalar engines, the matrix-function engine and the
/// FDE solvers.
#[derive(Debug, Clone, Error)]
pub enum MlError {
    /// Gamma evaluated at a nonpositive integer.
    #[error("gamma function pole at x = {0}")]
    PoleOfGamma(f64),

    /// Gamma argument beyond the double-precision overflow threshold.
    #[error("gamma overflow for x = {0} (threshold 171.624)")]
    Overflow(f64),

    /// Argument outside the admissible range of the requested method.
    #[error("argument out of range: {0}")]
    ArgumentOutOfRange(String),

    /// The method ran but its a-posteriori error estimate exceeds the target.
    #[error("accuracy lost: estimate {estimate:e} exceeds target {target:e}")]
    AccuracyLost { estimate: f64, target: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// No admissible contour parameters meet the requested tolerance.
    #[error("no contour meets target accuracy {0:e}")]
    TargetUnreachable(f64),

    /// QR iteration failed to deflate within its iteration budget.
    #[error("Schur iteration did not converge (stalled at index {0})")]
    NoConvergence(usize),

    /// A diagonal swap during Schur reordering exceeded its residual tolerance.
    #[error("unstable diagonal swap at position {0}")]
    SwapInstability(usize),

    /// Taylor terms of an atomic block failed to decay within the order budget.
    #[error("atomic block Taylor series did not decay within order {0}")]
    SlowTaylorDecay(usize),

    /// Two blocks assigned to distinct clusters have nearly equal eigenvalues.
    #[error("near-singular Sylvester separation: |tii - tjj| = {0:e}")]
    NearSingularSeparation(f64),

    /// Relative condition number undefined because ||f(A)|| = 0.
    #[error("zero function norm; relative condition number undefined")]
    ZeroFunctionNorm,

    /// Multiterm order must be supplied as a rational p/q.
    #[error("multiterm order must be rational p/q, got {0}")]
    IrrationalOrder(f64),

    /// Quadrature node budget is too small.
    #[error("node budget too small: {0} (need at least 2)")]
    NodeBudget(usize),

    #[error("parse error: {0}")]
    ParseError(String),

    #[error("dimension error: {0}")]
    DimensionError(String),
}

pub type Result<T> = std::result::Result<T, MlError>;
