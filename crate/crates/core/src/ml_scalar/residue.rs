//! Residues of e^s H_k(s; z) at the poles s* with (s*)^α = z.
//!
//! Res(e^s H_k(s; z), s*) = α^-(k+1) e^(s*) (s*)^(1-αk-β) P_k(s*), with P_k
//! built from the H recursion. Note: the closed forms sometimes quoted for
//! P_1 and P_2 contain a transcription slip; the recursion below is the
//! defining one and is cross-checked against contour quadrature in the tests.

use crate::error::{MlError, Result};
use crate::params::MLParams;
use num_complex::Complex64;

/// Coefficients of the residue polynomial P_k and of the auxiliary H^(k).
#[derive(Debug, Clone)]
pub struct ResiduePoly {
    pub k: usize,
    /// p_0 .. p_k of P_k(x) = Σ p_j x^j
    pub p_coeffs: Vec<f64>,
    /// H_0^(k) .. H_k^(k)
    pub h_coeffs: Vec<f64>,
}

impl ResiduePoly {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.p_coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Generalized binomial coefficient binom(α, m) = α(α-1)···(α-m+1)/m!.
fn gen_binom(alpha: f64, m: usize) -> f64 {
    let mut num = 1.0;
    for i in 0..m {
        num *= alpha - i as f64;
    }
    let mut fact = 1.0;
    for i in 1..=m {
        fact *= i as f64;
    }
    num / fact
}

/// Falling factorial (x)_m = x(x-1)···(x-m+1).
fn falling(x: f64, m: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..m {
        acc *= x - i as f64;
    }
    acc
}

pub fn residue_poly(k: usize, p: MLParams) -> ResiduePoly {
    let alpha = p.alpha;
    let amb = alpha - p.beta;
    let mut h = vec![0.0f64; k + 1];
    h[0] = 1.0;
    for j in 1..=k {
        let mut s = 0.0;
        for l in 1..=j {
            s += gen_binom(alpha, l + 1) * ((k * l) as f64 / j as f64 + 1.0) * h[j - l];
        }
        h[j] = -s / alpha;
    }
    let mut pc = vec![0.0f64; k + 1];
    let mut jfact = 1.0;
    for j in 0..=k {
        if j > 0 {
            jfact *= j as f64;
        }
        let mut s = 0.0;
        let mut lfact = 1.0;
        for l in 0..=(k - j) {
            if l > 0 {
                lfact *= l as f64;
            }
            s += falling(amb, l) / lfact * h[k - j - l];
        }
        pc[j] = s / jfact;
    }
    ResiduePoly { k, p_coeffs: pc, h_coeffs: h }
}

/// Residue of e^s H_k(s; z) at a pole s* with (s*)^α = z.
pub fn residue_at(s_star: Complex64, z: Complex64, k: usize, p: MLParams) -> Result<Complex64> {
    let check = s_star.powf(p.alpha) - z;
    if check.norm() > 1e-8 * z.norm().max(1.0) {
        return Err(MlError::InvalidArgument(format!(
            "s_star^alpha differs from z by {:e}",
            check.norm()
        )));
    }
    let rp = residue_poly(k, p);
    let expo = 1.0 - p.alpha * k as f64 - p.beta;
    let power = if expo == 0.0 { Complex64::new(1.0, 0.0) } else { s_star.powf(expo) };
    Ok(p.alpha.powi(-(k as i32 + 1)) * s_star.exp() * power * rp.eval(s_star))
}
