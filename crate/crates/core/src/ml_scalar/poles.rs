//! Poles of H_k(s; z) = s^(α-β) / (s^α - z)^(k+1) on the main Riemann sheet.

use crate::error::{MlError, Result};
use num_complex::Complex64;

/// All nonzero solutions of s^α = z with -π < Arg(s) ≤ π:
/// s = |z|^(1/α) exp(i (Arg z + 2jπ)/α) for integers j with
/// -α/2 - Arg(z)/(2π) < j ≤ α/2 - Arg(z)/(2π). May be empty.
pub fn pole_set(z: Complex64, alpha: f64) -> Result<Vec<Complex64>> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(MlError::InvalidArgument("pole_set requires z != 0".into()));
    }
    let mut theta = z.arg();
    if theta <= -std::f64::consts::PI {
        theta = std::f64::consts::PI; // keep Arg in (-π, π]
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let lower = -0.5 * alpha - theta / two_pi; // exclusive
    let upper = 0.5 * alpha - theta / two_pi; // inclusive
    let j_first = lower.floor() as i64 + 1;
    let j_last = upper.floor() as i64;
    let r = z.norm().powf(1.0 / alpha);
    let mut out = Vec::new();
    for j in j_first..=j_last {
        let phi = (theta + two_pi * j as f64) / alpha;
        out.push(Complex64::from_polar(r, phi));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_admissible_pole_for_small_alpha_on_negative_axis() {
        let s = pole_set(Complex64::new(-1.0, 0.0), 0.5).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn conjugate_pair_for_alpha_three_halves() {
        let mut s = pole_set(Complex64::new(-1.0, 0.0), 1.5).unwrap();
        s.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert_eq!(s.len(), 2);
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((s[1] - w).norm() < 1e-14);
        assert!((s[0] - w.conj()).norm() < 1e-14);
    }

    #[test]
    fn identity_for_classical_exponential() {
        let s = pole_set(Complex64::new(1.0, 0.0), 1.0).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn every_listed_pole_solves_the_defining_equation() {
        for &(re, im, alpha) in &[
            (2.0, 3.0, 0.7),
            (-4.0, 0.1, 1.3),
            (0.5, -0.5, 1.9),
            (10.0, 0.0, 2.0),
            (-1.0, 0.0, 1.0),
        ] {
            let z = Complex64::new(re, im);
            for s in pole_set(z, alpha).unwrap() {
                assert!((s.powf(alpha) - z).norm() <= 1e-12 * z.norm().max(1.0), "alpha={alpha} z={z}");
                assert!(s.arg() > -std::f64::consts::PI - 1e-15);
                assert!(s.arg() <= std::f64::consts::PI + 1e-15);
            }
        }
    }

    #[test]
    fn rejects_zero_argument() {
        assert!(pole_set(Complex64::new(0.0, 0.0), 0.8).is_err());
    }
}
