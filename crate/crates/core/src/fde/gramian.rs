//! Controllability and observability Gramians of fractional linear systems.

use super::MlSchurCache;
use crate::error::{MlError, Result};
use crate::funm::schur_decompose;
use crate::linalg::complexify;
use crate::quad::gauss_legendre;
use ndarray::Array2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramianKind {
    Controllability,
    Observability,
}

#[derive(Debug, Clone)]
pub struct GramianResult {
    pub matrix: Array2<f64>,
    /// Minimum eigenvalue estimate: the definiteness verdict.
    pub min_eigenvalue: f64,
    /// One-step Richardson check: distance to the half-node evaluation.
    pub quad_error_estimate: f64,
}

/// C_α(t) = ∫_0^t E_{α,α}(s^α A) B Bᵀ E_{α,α}(s^α Aᵀ) ds or the
/// observability analogue with E_{α,1} and CᵀC. Gauss-Legendre after the
/// substitution s = t·u^(1/α), which absorbs the fractional scale; result
/// symmetrized and reported with a min-eigenvalue estimate.
pub fn gramian(
    kind: GramianKind,
    a: &Array2<f64>,
    b_or_c: &Array2<f64>,
    alpha: f64,
    t: f64,
    nodes: usize,
) -> Result<GramianResult> {
    if nodes < 2 {
        return Err(MlError::NodeBudget(nodes));
    }
    if !(alpha > 0.0) || !(t > 0.0) {
        return Err(MlError::InvalidArgument("need alpha > 0 and t > 0".into()));
    }
    let n = a.nrows();
    if a.ncols() != n {
        return Err(MlError::DimensionError("A must be square".into()));
    }
    let outer = match kind {
        GramianKind::Controllability => {
            if b_or_c.nrows() != n {
                return Err(MlError::DimensionError("B must have as many rows as A".into()));
            }
            b_or_c.dot(&b_or_c.t()) // B Bᵀ
        }
        GramianKind::Observability => {
            if b_or_c.ncols() != n {
                return Err(MlError::DimensionError("C must have as many columns as A".into()));
            }
            b_or_c.t().dot(b_or_c) // Cᵀ C
        }
    };
    let beta = match kind {
        GramianKind::Controllability => alpha,
        GramianKind::Observability => 1.0,
    };
    let cache = MlSchurCache::new(a, alpha)?;
    let cache_t = MlSchurCache::new(&a.t().to_owned(), alpha)?;

    let integrate = |m: usize| -> Result<Array2<f64>> {
        let (xs, ws) = gauss_legendre(m);
        let mut acc = Array2::zeros((n, n));
        for (&x, &w) in xs.iter().zip(&ws) {
            let u = 0.5 * (x + 1.0); // map [-1,1] -> [0,1]
            let weight = 0.5 * w;
            // s = t u^(1/α): ds = (t/α) u^(1/α - 1) du, s^α = t^α u
            let jac = (t / alpha) * u.powf(1.0 / alpha - 1.0);
            let scale = t.powf(alpha) * u;
            let e_left = cache.eval(beta, scale)?;
            let e_right = cache_t.eval(beta, scale)?;
            let contrib = e_left.dot(&outer).dot(&e_right);
            acc = acc + contrib.map(|v| v * weight * jac);
        }
        Ok(acc)
    };

    let full = integrate(nodes)?;
    let half = integrate(nodes / 2)?;
    let quad_error_estimate = (&full - &half).iter().map(|v| v * v).sum::<f64>().sqrt();

    let sym = (&full + &full.t()) * 0.5;
    // definiteness verdict from the (real) spectrum of the symmetrized matrix
    let eigs = schur_decompose(&complexify(&sym))?;
    let min_eigenvalue =
        eigs.eigenvalues().iter().map(|l| l.re).fold(f64::INFINITY, f64::min);

    Ok(GramianResult { matrix: sym, min_eigenvalue, quad_error_estimate })
}
