//! Scalar-derivative accuracy sweeps against the big-float series oracle.

use mlfun::ml_scalar::{balanced_derivative, lt_derivative, ml_derivative, sf_prabhakar};
use mlfun::MLParams;
use num_complex::Complex64;

fn metric(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / (1.0 + want.norm())
}

/// Paper-style sweep: |z| in (0, 10] on a fixed ray, derivative orders 1..=6.
fn sweep(alpha: f64, beta: f64, theta: f64, kmax: usize, moduli: &[f64]) -> f64 {
    let p = MLParams::new(alpha, beta).unwrap();
    let mut worst = 0.0f64;
    for k in 1..=kmax {
        let mut worst_k = 0.0f64;
        for &r in moduli {
            let z = Complex64::from_polar(r, theta);
            let got = ml_derivative(z, k, p, 1e-15).unwrap();
            let (wre, wim) = mlfun_oracle::bigfloat_series_f64(z.re, z.im, k, alpha, beta);
            let m = metric(got.value, Complex64::new(wre, wim));
            worst_k = worst_k.max(m);
        }
        println!("  alpha={alpha} beta={beta} arg={theta:.3} k={k}: worst metric {worst_k:.2e}");
        worst = worst.max(worst_k);
    }
    worst
}

fn moduli_grid() -> Vec<f64> {
    (1..=20).map(|i| 0.5 * i as f64).collect()
}

#[test]
fn derivative_sweep_low_parameters() {
    let worst = sweep(0.6, 0.6, 0.8 * std::f64::consts::PI, 6, &moduli_grid());
    assert!(worst <= 5e-13, "worst metric {worst:e}");
}

#[test]
fn derivative_sweep_mixed_parameters() {
    let worst = sweep(0.8, 1.2, 0.5 * std::f64::consts::PI, 6, &moduli_grid());
    assert!(worst <= 5e-13, "worst metric {worst:e}");
}

#[test]
fn balancing_beats_pure_summation_on_the_peak() {
    // k = 5 on the ray arg z = π/2, |z| in (0, 2]: the region where the pure
    // Prabhakar formula over LT bases loses accuracy.
    let p = MLParams::new(0.6, 1.0).unwrap();
    let tau = 1e-15;
    let mut worst_balanced = 0.0f64;
    let mut worst_pure = 0.0f64;
    for i in 1..=20 {
        let r = 0.1 * i as f64;
        let z = Complex64::from_polar(r, std::f64::consts::FRAC_PI_2);
        let (wre, wim) = mlfun_oracle::bigfloat_series_f64(z.re, z.im, 5, 0.6, 1.0);
        let want = Complex64::new(wre, wim);
        let bal = balanced_derivative(z, 5, 1, p, &|zz, q, pp| lt_derivative(zz, q, pp, tau)).unwrap();
        let pure = sf_prabhakar(z, 5, p, &|zz, pp| lt_derivative(zz, 0, pp, tau)).unwrap();
        worst_balanced = worst_balanced.max(metric(bal.value, want));
        worst_pure = worst_pure.max(metric(pure.value, want));
    }
    println!("  balanced worst {worst_balanced:.2e}, pure-SF worst {worst_pure:.2e}");
    assert!(worst_balanced < worst_pure, "balanced {worst_balanced:e} !< pure {worst_pure:e}");
    assert!(worst_balanced <= 1e-11, "balanced worst {worst_balanced:e}");
}
