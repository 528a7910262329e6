//! Summation formulas for ML derivatives and the derivatives-balancing form.

use crate::error::{MlError, Result};
use crate::gamma::rgamma;
use crate::ml_scalar::{DerivEval, Method};
use crate::params::MLParams;
use num_complex::Complex64;

/// Coefficients c_0^(k) .. c_k^(k) of the summation formulas.
#[derive(Debug, Clone)]
pub struct SFCoeffs {
    pub k: usize,
    pub c: Vec<f64>,
}

/// c_0^(0) = 1;
/// c_0^(k) = (1-β-α(k-1)) c_0^(k-1),
/// c_j^(k) = c_{j-1}^(k-1) + (1-β-α(k-1)+j) c_j^(k-1),
/// c_k^(k) = 1.
pub fn djrbashian_coeffs(k: usize, p: MLParams) -> SFCoeffs {
    let mut c = vec![1.0f64];
    for kk in 1..=k {
        let base = 1.0 - p.beta - p.alpha * (kk as f64 - 1.0);
        let mut next = vec![0.0f64; kk + 1];
        next[0] = base * c[0];
        for j in 1..kk {
            next[j] = c[j - 1] + (base + j as f64) * c[j];
        }
        next[kk] = 1.0;
        c = next;
    }
    SFCoeffs { k, c }
}

/// A scalar ML evaluator used by the summation formulas: returns
/// E_{α,β}(z) for the shifted parameter pairs.
pub type ScalarMlEval<'a> = dyn Fn(Complex64, MLParams) -> Result<DerivEval> + 'a;

/// A lower-order derivative evaluator used by the balanced form.
pub type DerivMlEval<'a> = dyn Fn(Complex64, usize, MLParams) -> Result<DerivEval> + 'a;

fn combine_error(coeff_scale: f64, parts: &[(f64, f64)]) -> f64 {
    // parts: (|c_j·value_j|, |c_j|·err_j); the scale of the summands also
    // bounds the cancellation round-off.
    let mut prop = 0.0;
    let mut mag = 0.0;
    for &(m, e) in parts {
        prop += e;
        mag += m;
    }
    coeff_scale * (prop + f64::EPSILON * mag)
}

/// Djrbashian-type: d^k/dz^k E_{α,β}(z) = (α^k z^k)^-1 Σ_j c_j^(k) E_{α,β-j}(z).
pub fn sf_djrbashian(z: Complex64, k: usize, p: MLParams, ml_eval: &ScalarMlEval) -> Result<DerivEval> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(MlError::InvalidArgument("Djrbashian formula requires z != 0".into()));
    }
    if k == 0 {
        return ml_eval(z, p);
    }
    let coeffs = djrbashian_coeffs(k, p);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut parts = Vec::with_capacity(k + 1);
    for (j, &cj) in coeffs.c.iter().enumerate() {
        if cj == 0.0 {
            continue;
        }
        let shifted = MLParams { alpha: p.alpha, beta: p.beta - j as f64 };
        let base = ml_eval(z, shifted)?;
        sum += base.value * cj;
        parts.push(((base.value * cj).norm(), cj.abs() * base.err_estimate));
    }
    let denom = z.powi(k as i32) * p.alpha.powi(k as i32);
    let value = sum / denom;
    let err = combine_error(1.0 / denom.norm(), &parts);
    Ok(DerivEval { value, k, method: Method::DjrbashianSF, err_estimate: err, terms_or_nodes: k + 1 })
}

/// Prabhakar-type: d^k/dz^k E_{α,β}(z) = α^-k Σ_j c_j^(k) E_{α,αk+β-j}(z).
/// Valid at z = 0 as well.
pub fn sf_prabhakar(z: Complex64, k: usize, p: MLParams, ml_eval: &ScalarMlEval) -> Result<DerivEval> {
    if k == 0 {
        return ml_eval(z, p);
    }
    let coeffs = djrbashian_coeffs(k, p);
    let shift0 = p.alpha * k as f64 + p.beta;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut parts = Vec::with_capacity(k + 1);
    for (j, &cj) in coeffs.c.iter().enumerate() {
        if cj == 0.0 {
            continue;
        }
        let shifted = MLParams { alpha: p.alpha, beta: shift0 - j as f64 };
        let base = ml_eval(z, shifted)?;
        sum += base.value * cj;
        parts.push(((base.value * cj).norm(), cj.abs() * base.err_estimate));
    }
    let scale = p.alpha.powi(-(k as i32));
    Ok(DerivEval {
        value: sum * scale,
        k,
        method: Method::PrabhakarSF,
        err_estimate: combine_error(scale, &parts),
        terms_or_nodes: k + 1,
    })
}

/// Balanced form: d^k/dz^k E_{α,β}(z) =
/// α^-(k-q) Σ_j c_j^(k-q) d^q/dz^q E_{α,(k-q)α+β-j}(z), 0 ≤ q ≤ k.
pub fn balanced_derivative(
    z: Complex64,
    k: usize,
    q: usize,
    p: MLParams,
    deriv_eval: &DerivMlEval,
) -> Result<DerivEval> {
    if q > k {
        return Err(MlError::InvalidArgument(format!("balanced derivative needs q <= k, got q={q} k={k}")));
    }
    if q == k {
        return deriv_eval(z, k, p);
    }
    let m = k - q;
    let coeffs = djrbashian_coeffs(m, p);
    let shift0 = m as f64 * p.alpha + p.beta;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut parts = Vec::with_capacity(m + 1);
    for (j, &cj) in coeffs.c.iter().enumerate() {
        if cj == 0.0 {
            continue;
        }
        let shifted = MLParams { alpha: p.alpha, beta: shift0 - j as f64 };
        let base = deriv_eval(z, q, shifted)?;
        sum += base.value * cj;
        parts.push(((base.value * cj).norm(), cj.abs() * base.err_estimate));
    }
    let scale = p.alpha.powi(-(m as i32));
    Ok(DerivEval {
        value: sum * scale,
        k,
        method: Method::Balanced,
        err_estimate: combine_error(scale, &parts),
        terms_or_nodes: m + 1,
    })
}

/// Residual of the defining linear system
/// Σ_{j=0}^{k-1} c_j^(k)/Γ(αl+β-j) = -1/Γ(αl+β-k), l = 0..k-1,
/// as the max relative defect over l. Zero-vanishing check used by tests
/// and the acceptance suite.
pub fn coeff_system_residual(k: usize, p: MLParams) -> f64 {
    let coeffs = djrbashian_coeffs(k, p);
    let mut worst = 0.0f64;
    for l in 0..k {
        let x0 = p.alpha * l as f64 + p.beta;
        let mut lhs = 0.0;
        let mut scale = 0.0f64;
        for (j, &cj) in coeffs.c.iter().enumerate().take(k) {
            let v = cj * rgamma(x0 - j as f64);
            lhs += v;
            scale = scale.max(v.abs());
        }
        let rhs = -rgamma(x0 - k as f64);
        scale = scale.max(rhs.abs()).max(1e-300);
        worst = worst.max((lhs - rhs).abs() / scale);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64, b: f64) -> MLParams {
        MLParams::new(a, b).unwrap()
    }

    #[test]
    fn table_entries_for_low_orders() {
        let p = params(0.5, 0.5);
        let c1 = djrbashian_coeffs(1, p);
        assert_eq!(c1.c, vec![0.5, 1.0]); // [1-β, 1]
        let c2 = djrbashian_coeffs(2, p);
        // [(1-β)(1-β-α), 3-2β-α, 1] = [0, 1.5, 1]
        assert!((c2.c[0]).abs() < 1e-15);
        assert!((c2.c[1] - 1.5).abs() < 1e-15);
        assert_eq!(c2.c[2], 1.0);
    }

    #[test]
    fn third_order_entry_vanishes_for_classical_parameters() {
        let c3 = djrbashian_coeffs(3, params(1.0, 1.0));
        // c_2^(3) = 6-3β-3α = 0
        assert!(c3.c[2].abs() < 1e-14);
        assert_eq!(c3.c[3], 1.0);
    }

    #[test]
    fn coefficients_solve_the_vanishing_system() {
        for &(a, b) in &[(0.5, 0.5), (0.7, 1.0), (1.0, 1.0), (0.8, 1.2), (1.4, 0.3)] {
            for k in 1..=8 {
                let r = coeff_system_residual(k, params(a, b));
                assert!(r < 1e-10, "alpha={a} beta={b} k={k}: residual {r:e}");
            }
        }
    }

    #[test]
    fn coefficient_cap_is_always_one() {
        for k in 0..=10 {
            let c = djrbashian_coeffs(k, params(0.62, 1.37));
            assert_eq!(*c.c.last().unwrap(), 1.0);
            assert_eq!(c.c.len(), k + 1);
        }
    }
}
