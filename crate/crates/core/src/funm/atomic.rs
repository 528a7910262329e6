//! Atomic-block evaluation: Taylor expansion about the eigenvalue mean.

use crate::error::{MlError, Result};
use crate::funm::DerivativeOracle;
use crate::linalg::{fro_norm, CMat};
use ndarray::Array2;
use num_complex::Complex64;

/// Hard cap on the Taylor order requested from the derivative oracle.
pub const MAX_TAYLOR_ORDER: usize = 250;

/// Result of an atomic-block evaluation.
#[derive(Debug, Clone)]
pub struct AtomicResult {
    pub value: CMat,
    /// Number of Taylor terms consumed (highest order + 1).
    pub terms_used: usize,
}

/// f(T_ii) = Σ_k f^(k)(σ)/k! M^k with σ = trace(T_ii)/m, M = T_ii - σI.
///
/// Terminates once the relative contribution of a term stays below ε for two
/// consecutive terms and at least m terms were consumed; an exactly vanishing
/// power of M (identical cluster eigenvalues) terminates immediately.
pub fn atomic_block_fun(tii: &CMat, oracle: &dyn DerivativeOracle) -> Result<AtomicResult> {
    let m = tii.nrows();
    if m == 0 {
        return Err(MlError::DimensionError("empty atomic block".into()));
    }
    let trace: Complex64 = (0..m).map(|i| tii[[i, i]]).sum();
    let sigma = trace / m as f64;

    let mut chunk = (m + 4).min(MAX_TAYLOR_ORDER);
    let mut derivs = oracle.derivatives(sigma, chunk)?;

    let mut mshift = tii.clone();
    for i in 0..m {
        mshift[[i, i]] -= sigma;
    }

    let mut f = Array2::from_diag_elem(m, derivs[0]);
    let mut power = Array2::from_diag_elem(m, Complex64::new(1.0, 0.0));
    let mut inv_fact = 1.0f64;
    let mut consec_small = 0;
    let mut j = 1usize;
    loop {
        power = power.dot(&mshift);
        if power.iter().all(|x| *x == Complex64::new(0.0, 0.0)) {
            // nilpotent shift: the series has terminated exactly
            return Ok(AtomicResult { value: f, terms_used: j });
        }
        if j > chunk {
            chunk = (chunk * 2).min(MAX_TAYLOR_ORDER);
            derivs = oracle.derivatives(sigma, chunk)?;
        }
        if j >= MAX_TAYLOR_ORDER {
            return Err(MlError::SlowTaylorDecay(j));
        }
        inv_fact /= j as f64;
        if inv_fact == 0.0 {
            return Err(MlError::SlowTaylorDecay(j));
        }
        let coeff = derivs[j] * inv_fact;
        let term = power.map(|x| x * coeff);
        f += &term;
        let rel = fro_norm(&term) / fro_norm(&f).max(f64::MIN_POSITIVE);
        if rel <= f64::EPSILON {
            consec_small += 1;
            if consec_small >= 2 && j + 1 >= m {
                return Ok(AtomicResult { value: f, terms_used: j + 1 });
            }
        } else {
            consec_small = 0;
        }
        j += 1;
    }
}
