//! Scalar Mittag-Leffler derivatives: truncated series, Laplace-transform
//! inversion and summation formulas, dispatched with derivatives balancing.

mod contour;
mod poles;
mod residue;
mod series;
mod summation;

pub use contour::{contour_select, lt_derivative, ContourSpec};
pub use poles::pole_set;
pub use residue::{residue_at, residue_poly, ResiduePoly};
pub use series::{ml_series, SeriesBounds};
pub use summation::{
    balanced_derivative, coeff_system_residual, djrbashian_coeffs, sf_djrbashian, sf_prabhakar,
    SFCoeffs,
};

use crate::error::{MlError, Result};
use crate::gamma::rgamma;
use crate::params::MLParams;
use num_complex::Complex64;

/// Default target accuracy; the binary64 unit roundoff is the floor.
pub const DEFAULT_TAU: f64 = 1e-15;

/// Above this derivative order the dispatcher balances down to first-order
/// inner derivatives (q = 1).
pub const BALANCING_THRESHOLD: usize = 3;

/// Series prefilter: outside |arg z| ≤ απ/2 the series is attempted only for
/// |z| at or below this radius (cancellation region).
pub const CANCELLATION_RADIUS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    LaplaceInversion,
    PrabhakarSF,
    DjrbashianSF,
    Balanced,
    Exact0,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::LaplaceInversion => "laplace-inversion",
            Method::PrabhakarSF => "prabhakar-sf",
            Method::DjrbashianSF => "djrbashian-sf",
            Method::Balanced => "balanced",
            Method::Exact0 => "exact0",
        }
    }
}

/// A computed value of d^k/dz^k E_{α,β}(z) with its method tag and
/// a-posteriori absolute error estimate.
#[derive(Debug, Clone)]
pub struct DerivEval {
    pub value: Complex64,
    pub k: usize,
    pub method: Method,
    pub err_estimate: f64,
    pub terms_or_nodes: usize,
}

impl DerivEval {
    /// True when the estimate misses the scale-aware target τ·(1+|value|).
    /// Results are returned anyway; callers decide how to react.
    pub fn degraded(&self, tau: f64) -> bool {
        self.err_estimate > tau * (1.0 + self.value.norm())
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0f64, |a, i| a * i as f64)
}

fn exact_at_zero(k: usize, p: MLParams) -> Result<DerivEval> {
    if k > 170 {
        return Err(MlError::ArgumentOutOfRange(format!("derivative order {k} overflows k!")));
    }
    let value = factorial(k) * rgamma(p.alpha * k as f64 + p.beta);
    Ok(DerivEval {
        value: Complex64::new(value, 0.0),
        k,
        method: Method::Exact0,
        err_estimate: f64::EPSILON * value.abs(),
        terms_or_nodes: 1,
    })
}

/// d^k/dz^k E_{α,β}(z), dispatching among the series, the Laplace inversion
/// and the summation formulas with derivatives balancing.
///
/// z = 0 is exact (k!/Γ(αk+β)); otherwise the truncated series is attempted
/// for small admissible arguments and accepted only when its a-posteriori
/// bound meets the target; all remaining cases go through the Prabhakar
/// summation formula over Laplace-inversion base values, switching to the
/// balanced form with first-order inner derivatives for k ≥ 3.
pub fn ml_derivative(z: Complex64, k: usize, p: MLParams, tau: f64) -> Result<DerivEval> {
    if !(tau > f64::EPSILON) {
        return Err(MlError::InvalidArgument(format!("tau must exceed machine eps, got {tau:e}")));
    }
    if z == Complex64::new(0.0, 0.0) {
        return exact_at_zero(k, p);
    }

    let r = z.norm();
    let admissible = r.ln() <= series::ln_admissible_radius(k, p, tau).max(0.0);
    let benign_region =
        r <= 1.0 || z.arg().abs() <= p.alpha * std::f64::consts::FRAC_PI_2 || r <= CANCELLATION_RADIUS;
    if admissible && benign_region {
        match ml_series(z, k, p, tau) {
            Ok((ev, _)) => return Ok(ev),
            Err(MlError::AccuracyLost { .. }) | Err(MlError::ArgumentOutOfRange(_)) => {}
            Err(e) => return Err(e),
        }
    }

    if k == 0 || contour::is_meromorphic(p) {
        return lt_derivative(z, k, p, tau);
    }
    if k < BALANCING_THRESHOLD {
        sf_prabhakar(z, k, p, &|zz, pp| lt_derivative(zz, 0, pp, tau))
    } else {
        balanced_derivative(z, k, 1, p, &|zz, q, pp| lt_derivative(zz, q, pp, tau))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64, b: f64) -> MLParams {
        MLParams::new(a, b).unwrap()
    }

    #[test]
    fn zero_argument_is_exact() {
        let ev = ml_derivative(Complex64::new(0.0, 0.0), 3, params(0.7, 0.9), 1e-15).unwrap();
        assert_eq!(ev.method, Method::Exact0);
        assert!((ev.value.re - 3.0).abs() < 5e-15);
        // Γ pole in the denominator gives an exact zero.
        let ev0 = ml_derivative(Complex64::new(0.0, 0.0), 0, params(0.5, 0.0), 1e-15).unwrap();
        assert_eq!(ev0.value.re, 0.0);
    }

    #[test]
    fn exponential_far_negative() {
        let ev = ml_derivative(Complex64::new(-4.0, 0.0), 0, params(1.0, 1.0), 1e-15).unwrap();
        let want = 0.018315638888734180294;
        assert!(((ev.value.re - want) / want).abs() < 1e-14);
    }

    #[test]
    fn rejects_tau_at_machine_precision() {
        assert!(ml_derivative(Complex64::new(1.0, 0.0), 0, params(0.8, 1.0), f64::EPSILON / 2.0).is_err());
    }

    #[test]
    fn small_argument_uses_series() {
        let ev = ml_derivative(Complex64::new(0.4, 0.1), 2, params(0.6, 1.0), 1e-15).unwrap();
        assert_eq!(ev.method, Method::Series);
        assert!(!ev.degraded(1e-13));
    }

    #[test]
    fn conjugate_symmetry() {
        let p = params(0.8, 1.2);
        for &(re, im, k) in
            &[(0.5, 1.5, 0usize), (-2.0, 3.0, 1), (-6.0, 2.0, 4), (4.0, 4.0, 2), (-0.3, 0.1, 5)]
        {
            let z = Complex64::new(re, im);
            let a = ml_derivative(z, k, p, 1e-13).unwrap();
            let b = ml_derivative(z.conj(), k, p, 1e-13).unwrap();
            let tol = 2.0 * a.err_estimate.max(f64::EPSILON * a.value.norm());
            assert!(
                (a.value.conj() - b.value).norm() <= tol,
                "z={z} k={k}: {} vs {}",
                a.value,
                b.value
            );
        }
    }

    #[test]
    fn series_recurrence_identity() {
        // E_{α,β}(z) = z E_{α,α+β}(z) + 1/Γ(β)
        for &alpha in &[0.5, 0.8, 1.0, 1.5] {
            for &beta in &[0.5, 1.0, 1.2] {
                for &(re, im) in &[(0.5, 0.0), (-1.0, 2.0), (3.0, -1.5), (-5.0, 0.0), (0.0, 4.0)] {
                    let z = Complex64::new(re, im);
                    let lhs = ml_derivative(z, 0, params(alpha, beta), 1e-14).unwrap();
                    let rhs = ml_derivative(z, 0, params(alpha, alpha + beta), 1e-14).unwrap();
                    let expect = z * rhs.value + rgamma(beta);
                    let tol = 4.0 * (lhs.err_estimate + z.norm() * rhs.err_estimate)
                        + 1e-13 * (1.0 + lhs.value.norm());
                    assert!(
                        (lhs.value - expect).norm() <= tol,
                        "alpha={alpha} beta={beta} z={z}: |Δ|={:e} tol={tol:e}",
                        (lhs.value - expect).norm()
                    );
                }
            }
        }
    }

    #[test]
    fn first_derivative_identity() {
        // α z E' = E_{α,β-1}(z) + (1-β) E_{α,β}(z), z != 0.
        for &(a, b) in &[(0.6, 1.0), (0.8, 1.2), (1.5, 0.5)] {
            let p = params(a, b);
            for &(re, im) in &[(0.7, 0.2), (-1.5, 1.0), (2.0, -3.0), (-4.0, 0.0)] {
                let z = Complex64::new(re, im);
                let d1 = ml_derivative(z, 1, p, 1e-14).unwrap();
                let e0 = ml_derivative(z, 0, p, 1e-14).unwrap();
                let em1 = ml_derivative(z, 0, params(a, b - 1.0), 1e-14).unwrap();
                let lhs = z * d1.value * a;
                let rhs = em1.value + (1.0 - b) * e0.value;
                let tol = 4.0
                    * (a * z.norm() * d1.err_estimate + em1.err_estimate + (1.0 - b).abs() * e0.err_estimate)
                    + 1e-13 * (1.0 + rhs.norm());
                assert!((lhs - rhs).norm() <= tol, "a={a} b={b} z={z}: {:e}", (lhs - rhs).norm());
            }
        }
    }
}
