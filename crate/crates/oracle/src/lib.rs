//! Extended-precision oracles for the mlfun test suites.
//!
//! Everything here is test-support: term-by-term big-float summation of the
//! Mittag-Leffler derivative series, big-float and compensated matrix Taylor
//! summation, erfc-based closed forms, and pinned-fixture bookkeeping. The
//! production crate never depends on this one.

pub mod bigc;
pub mod fixture;
pub mod matrix;

use bigc::{decimal_string, falling_big, gamma_big, pow10, BigComplex};
use rug::float::Round;
use rug::Float;

const TERM_BUDGET: usize = 1_000_000;

fn bits_for_digits(digits: usize) -> u32 {
    ((digits as f64) * 3.3220) as u32 + 24
}

/// Raw big-float summation of Σ_{j=k}^∞ (j)_k z^(j-k) / Γ(αj+β) at a fixed
/// working precision. Returns the sum and the largest term magnitude.
fn series_sum_at(prec: u32, z_re: f64, z_im: f64, k: usize, alpha: f64, beta: f64, stop_exp: i32) -> Option<(BigComplex, Float)> {
    let z = BigComplex::from_f64(prec, z_re, z_im);
    let alpha_big = Float::with_val(prec, alpha);
    let beta_big = Float::with_val(prec, beta);
    let mut pw = BigComplex::one(prec); // z^(j-k)
    let mut sum = BigComplex::zero(prec);
    let mut max_term = Float::with_val(prec, 0.0);
    let stop = pow10(prec, stop_exp);
    let mut consec_small = 0;
    for j in k..TERM_BUDGET {
        let ff = falling_big(prec, j as f64, k);
        // The Γ abscissa must carry full precision: rounding αj+β in f64
        // perturbs every term by ~ψ(x)·1e-16 and the hump amplifies it.
        let x = Float::with_val(prec, &alpha_big * &Float::with_val(prec, j)) + &beta_big;
        let g = Float::with_val(prec, x).gamma();
        let coeff = Float::with_val(prec, &ff / &g);
        let term = pw.scale(&coeff);
        sum = sum.add(&term);
        let mag = term.abs();
        if mag > max_term {
            max_term = mag.clone();
        }
        // Absolute-and-relative stop: far past the hump the terms collapse.
        let thresh = Float::with_val(prec, &stop * &Float::with_val(prec, sum.abs().max(&Float::with_val(prec, 1.0))));
        if mag < thresh {
            consec_small += 1;
            if consec_small >= 4 {
                return Some((sum, max_term));
            }
        } else {
            consec_small = 0;
        }
        pw = pw.mul(&z);
    }
    None
}

/// d^k/dz^k E_{α,β}(z) summed term by term in big-float arithmetic, with
/// the working precision raised until the cancellation leaves at least
/// `digits` significant digits. Returns the value at full working precision.
pub fn bigfloat_series_value(z_re: f64, z_im: f64, k: usize, alpha: f64, beta: f64, digits: usize) -> BigComplex {
    assert!(digits >= 30, "oracle contract requires at least 30 digits");
    assert!((z_re * z_re + z_im * z_im).sqrt() <= 50.0, "oracle budget bound |z| <= 50");
    let mut extra = 10usize;
    loop {
        let work_digits = digits + extra;
        let prec = bits_for_digits(work_digits);
        let stop_exp = -((digits + extra / 2) as i32);
        let (sum, max_term) = series_sum_at(prec, z_re, z_im, k, alpha, beta, stop_exp)
            .expect("term budget exceeded in bigfloat series oracle");
        // Digits lost to cancellation: log10(max term / |sum|).
        let mag = sum.abs();
        let lost = if mag == 0.0 {
            work_digits as f64
        } else {
            let ratio = Float::with_val(prec, &max_term / &mag);
            ratio.to_f64_round(Round::Nearest).abs().log10().max(0.0)
        };
        if (work_digits as f64) - lost >= (digits + 5) as f64 {
            return sum;
        }
        extra = extra * 2 + lost.ceil() as usize;
        assert!(extra < 4000, "runaway precision growth in series oracle");
    }
}

/// Decimal-string form of [`bigfloat_series_value`], rounded to `digits`.
pub fn bigfloat_series(z_re: f64, z_im: f64, k: usize, alpha: f64, beta: f64, digits: usize) -> (String, String) {
    let v = bigfloat_series_value(z_re, z_im, k, alpha, beta, digits);
    (decimal_string(&v.re, digits), decimal_string(&v.im, digits))
}

/// f64 rounding of the oracle value.
pub fn bigfloat_series_f64(z_re: f64, z_im: f64, k: usize, alpha: f64, beta: f64) -> (f64, f64) {
    bigfloat_series_value(z_re, z_im, k, alpha, beta, 30).to_c64()
}

/// e^(x²) erfc(-x) in big-float arithmetic (the E_{1/2,1} closed form),
/// immune to the overflow/underflow of the separate factors.
pub fn erfc_identity_value(x: f64, digits: usize) -> f64 {
    let prec = bits_for_digits(digits + 10);
    let xx = Float::with_val(prec, x);
    let e = Float::with_val(prec, xx.clone().square()).exp();
    let erfc = Float::with_val(prec, -xx).erfc();
    Float::with_val(prec, e * erfc).to_f64_round(Round::Nearest)
}

/// cosh(√z) for complex z in big-float arithmetic (the E_{2,1} closed form).
pub fn cosh_sqrt_value(z_re: f64, z_im: f64, digits: usize) -> (f64, f64) {
    let prec = bits_for_digits(digits + 10);
    let z = BigComplex::from_f64(prec, z_re, z_im);
    let half = Float::with_val(prec, 0.5);
    let s = z.pow_real(&half);
    let e1 = s.exp();
    let e2 = BigComplex::new(Float::with_val(prec, -s.re.clone()), Float::with_val(prec, -s.im.clone())).exp();
    let sum = e1.add(&e2);
    let (re, im) = sum.to_c64();
    (0.5 * re, 0.5 * im)
}

/// Γ(x) rounded from big-float arithmetic; test-side reference for gamma.
pub fn gamma_value(x: f64) -> f64 {
    gamma_big(bits_for_digits(40), x).to_f64_round(Round::Nearest)
}

/// Divided difference (f(a) - f(b))/(a - b) of E_{α,β} computed entirely in
/// big-float arithmetic; safe for nearly confluent nodes.
pub fn ml_divided_difference(a: (f64, f64), b: (f64, f64), alpha: f64, beta: f64, digits: usize) -> (f64, f64) {
    let fa = bigfloat_series_value(a.0, a.1, 0, alpha, beta, digits);
    let fb = bigfloat_series_value(b.0, b.1, 0, alpha, beta, digits);
    let prec = fa.prec().max(fb.prec());
    let fa = BigComplex::new(Float::with_val(prec, &fa.re), Float::with_val(prec, &fa.im));
    let fb = BigComplex::new(Float::with_val(prec, &fb.re), Float::with_val(prec, &fb.im));
    let da = BigComplex::from_f64(prec, a.0 - b.0, a.1 - b.1);
    fa.sub(&fb).div(&da).to_c64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_number_to_thirty_digits() {
        let (re, im) = bigfloat_series(1.0, 0.0, 0, 1.0, 1.0, 30);
        // e = 2.71828182845904523536028747135...
        assert_eq!(re, "0.271828182845904523536028747135e1");
        assert_eq!(im, "0.0e0");
    }

    #[test]
    fn value_at_zero_reduces_to_gamma_quotient() {
        // (d^5 E_{0.7,1.3})(0) = 5!/Γ(0.7·5+1.3) = 120/Γ(4.8)
        let (re, _) = bigfloat_series(0.0, 0.0, 5, 0.7, 1.3, 30);
        assert_eq!(re, "0.672726362174708400098405510327e1");
    }

    #[test]
    fn self_consistency_between_precisions() {
        let v30 = bigfloat_series_value(-7.0, 3.0, 3, 0.6, 1.0, 30);
        let v50 = bigfloat_series_value(-7.0, 3.0, 3, 0.6, 1.0, 50);
        let d30 = decimal_string(&v30.re, 30);
        let d50_trunc = decimal_string(&v50.re, 30);
        assert_eq!(d30, d50_trunc);
    }

    #[test]
    fn reverse_summation_cross_check() {
        // Same sum accumulated in reverse order must agree to the pinned digits.
        let prec = bits_for_digits(75);
        let (z_re, z_im, k, alpha, beta) = (-7.0f64, 3.0f64, 3usize, 0.6, 1.0);
        let fwd = bigfloat_series_value(z_re, z_im, k, alpha, beta, 50);
        let z = bigc::BigComplex::from_f64(prec, z_re, z_im);
        let alpha_big = rug::Float::with_val(prec, alpha);
        let beta_big = rug::Float::with_val(prec, beta);
        let mut terms = Vec::new();
        let mut pw = bigc::BigComplex::one(prec);
        for j in k..3000 {
            let x = rug::Float::with_val(prec, &alpha_big * &rug::Float::with_val(prec, j)) + &beta_big;
            let g = rug::Float::with_val(prec, x).gamma();
            let c = rug::Float::with_val(prec, bigc::falling_big(prec, j as f64, k) / g);
            terms.push(pw.scale(&c));
            pw = pw.mul(&z);
        }
        let mut rev = bigc::BigComplex::zero(prec);
        for t in terms.iter().rev() {
            rev = rev.add(t);
        }
        assert_eq!(bigc::decimal_string(&fwd.re, 50), bigc::decimal_string(&rev.re, 50));
        assert_eq!(bigc::decimal_string(&fwd.im, 50), bigc::decimal_string(&rev.im, 50));
    }

    #[test]
    fn identity_battery() {
        // e^z on scattered points
        for &(re, im) in &[(0.3, -1.2), (-2.0, 0.7), (3.5, 3.5)] {
            let (vre, vim) = bigfloat_series_f64(re, im, 0, 1.0, 1.0);
            let want = num_complex::Complex64::new(re, im).exp();
            assert!((num_complex::Complex64::new(vre, vim) - want).norm() < 1e-14 * want.norm());
        }
        // cosh √z
        for &(re, im) in &[(0.5, 0.0), (-3.0, 1.0), (2.0, -2.0)] {
            let (vre, vim) = bigfloat_series_f64(re, im, 0, 2.0, 1.0);
            let (wre, wim) = cosh_sqrt_value(re, im, 40);
            let w = num_complex::Complex64::new(wre, wim);
            assert!((num_complex::Complex64::new(vre, vim) - w).norm() < 1e-14 * w.norm().max(1.0));
        }
        // e^(x²) erfc(-x)
        for &x in &[-5.0, -1.0, 0.5, 2.0] {
            let (vre, _) = bigfloat_series_f64(x, 0.0, 0, 0.5, 1.0);
            let w = erfc_identity_value(x, 40);
            assert!((vre - w).abs() < 1e-14 * w.abs());
        }
    }
}
