//! Parameter pair of the two-parameter Mittag-Leffler function.

use crate::error::{MlError, Result};

/// The (α, β) pair of E_{α,β}. Both parameters are real and α must be
/// strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub alpha: f64,
    pub beta: f64,
}

impl MLParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(MlError::InvalidArgument(format!(
                "alpha must be positive and finite, got {alpha}"
            )));
        }
        if !beta.is_finite() {
            return Err(MlError::InvalidArgument(format!("beta must be finite, got {beta}")));
        }
        Ok(Self { alpha, beta })
    }

    /// True when (α, β) makes E_{α,β} the plain exponential.
    pub fn is_exponential(&self) -> bool {
        (self.alpha - 1.0).abs() <= 1e-14 && (self.beta - 1.0).abs() <= 1e-14
    }
}
