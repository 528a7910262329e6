//! Cross-method checks against live oracle values: per-operation examples
//! that need extended-precision references, and the inter-engine agreement
//! properties.

use mlfun::funm::{atomic_block_fun, cluster_eigenvalues, reorder_schur, schur_decompose, FnOracle};
use mlfun::ml_scalar::{
    balanced_derivative, lt_derivative, ml_derivative, ml_series, sf_djrbashian, sf_prabhakar,
};
use mlfun::{MLParams, rgamma};
use ndarray::array;
use num_complex::Complex64;

fn params(a: f64, b: f64) -> MLParams {
    MLParams::new(a, b).unwrap()
}

fn oracle_value(z: Complex64, k: usize, p: MLParams) -> Complex64 {
    let (re, im) = mlfun_oracle::bigfloat_series_f64(z.re, z.im, k, p.alpha, p.beta);
    Complex64::new(re, im)
}

#[test]
fn series_second_derivative_against_oracle() {
    let p = params(0.6, 1.0);
    let z = Complex64::new(-3.0, 0.0);
    let (ev, bounds) = ml_series(z, 2, p, 1e-15).unwrap();
    let want = oracle_value(z, 2, p);
    assert!((ev.value - want).norm() <= bounds.bound_used + 1e-15 * (1.0 + want.norm()));
}

#[test]
fn lt_derivative_against_oracle_complex_argument() {
    let p = params(0.8, 1.2);
    let z = Complex64::new(2.0, 2.0);
    let ev = lt_derivative(z, 1, p, 1e-13).unwrap();
    let want = oracle_value(z, 1, p);
    let m = (ev.value - want).norm() / (1.0 + want.norm());
    assert!(m <= 1e-13, "metric {m:e}");
}

#[test]
fn prabhakar_formula_fourth_derivative() {
    let p = params(0.8, 1.2);
    let z = Complex64::new(-1.5, 0.0);
    let ev = sf_prabhakar(z, 4, p, &|zz, pp| lt_derivative(zz, 0, pp, 1e-15)).unwrap();
    let want = oracle_value(z, 4, p);
    assert!((ev.value - want).norm() <= 1e-12 * (1.0 + want.norm()));
}

#[test]
fn prabhakar_identities() {
    // at z = 0 the formula must reduce to k!/Γ(αk+β)
    let p = params(0.5, 1.0);
    let ev = sf_prabhakar(Complex64::new(0.0, 0.0), 2, p, &|zz, pp| {
        ml_derivative(zz, 0, pp, 1e-15)
    })
    .unwrap();
    assert!((ev.value.re - 2.0).abs() < 1e-13, "got {}", ev.value.re);
    // classical case: c_0 E_{1,2}(1) vanishes (c_0 = 1-β = 0), leaving e
    let e = sf_prabhakar(Complex64::new(1.0, 0.0), 1, params(1.0, 1.0), &|zz, pp| {
        ml_derivative(zz, 0, pp, 1e-15)
    })
    .unwrap();
    assert!((e.value.re - std::f64::consts::E).abs() < 1e-13);
}

#[test]
fn djrbashian_formula_agreement_and_identities() {
    let p = params(0.6, 1.0);
    // exponential identity at k = 1, α = β = 1: (E_{1,0}(1) + 0)/1 = e
    let e = sf_djrbashian(Complex64::new(1.0, 0.0), 1, params(1.0, 1.0), &|zz, pp| {
        ml_derivative(zz, 0, pp, 1e-15)
    })
    .unwrap();
    assert!((e.value.re - std::f64::consts::E).abs() < 1e-13);
    // cross-method agreement with the series at z = -2
    let z = Complex64::new(-2.0, 0.0);
    let dj = sf_djrbashian(z, 1, p, &|zz, pp| ml_derivative(zz, 0, pp, 1e-15)).unwrap();
    let (se, _) = ml_series(z, 1, p, 1e-15).unwrap();
    assert!((dj.value - se.value).norm() <= 1e-12 * (1.0 + se.value.norm()));
    // z = 0 is rejected
    assert!(sf_djrbashian(Complex64::new(0.0, 0.0), 1, p, &|zz, pp| {
        ml_derivative(zz, 0, pp, 1e-15)
    })
    .is_err());
}

#[test]
fn djrbashian_cancellation_near_zero_is_flagged_by_the_estimate() {
    // At |z| = 1e-8 and k = 3 the formula divides by z³: the estimate must
    // blow up while the true value stays near k!/Γ(αk+β).
    let p = params(0.7, 1.0);
    let z = Complex64::new(1e-8, 0.0);
    let dj = sf_djrbashian(z, 3, p, &|zz, pp| ml_derivative(zz, 0, pp, 1e-15)).unwrap();
    let limit = 6.0 * rgamma(0.7 * 3.0 + 1.0);
    assert!(
        dj.err_estimate >= 1e-3 * limit.abs(),
        "estimate {:e} fails to flag the z^-k amplification",
        dj.err_estimate
    );
    // the dispatcher avoids this path: the series handles tiny arguments
    let via_dispatch = ml_derivative(z, 3, p, 1e-15).unwrap();
    assert!((via_dispatch.value.re - limit).abs() <= 1e-10 * limit.abs());
}

#[test]
fn balanced_reductions() {
    let p = params(0.6, 1.0);
    let z = Complex64::new(0.9, 1.4);
    // q = k: identity passthrough
    let direct = lt_derivative(z, 3, p, 1e-14).unwrap();
    let bal = balanced_derivative(z, 3, 3, p, &|zz, q, pp| lt_derivative(zz, q, pp, 1e-14)).unwrap();
    assert_eq!(bal.value, direct.value);
    // q = 0 coincides with the Prabhakar formula
    let bal0 = balanced_derivative(z, 3, 0, p, &|zz, q, pp| {
        assert_eq!(q, 0);
        lt_derivative(zz, 0, pp, 1e-14)
    })
    .unwrap();
    let pr = sf_prabhakar(z, 3, p, &|zz, pp| lt_derivative(zz, 0, pp, 1e-14)).unwrap();
    assert!((bal0.value - pr.value).norm() <= 1e-15 * (1.0 + pr.value.norm()));
    // q > k is rejected
    assert!(balanced_derivative(z, 2, 3, p, &|zz, q, pp| lt_derivative(zz, q, pp, 1e-14)).is_err());
}

#[test]
fn summation_formulas_agree_away_from_zero() {
    // Djrbashian and Prabhakar agree within 10τ for |z| >= 1.
    let tau = 1e-14;
    for &(a, b) in &[(0.6, 1.0), (0.8, 1.2)] {
        let p = params(a, b);
        for &(re, im) in &[(1.0, 0.5), (-2.0, 1.0), (0.0, 3.0), (-4.0, -2.0)] {
            let z = Complex64::new(re, im);
            for k in 1..=3usize {
                let dj = sf_djrbashian(z, k, p, &|zz, pp| lt_derivative(zz, 0, pp, tau)).unwrap();
                let pr = sf_prabhakar(z, k, p, &|zz, pp| lt_derivative(zz, 0, pp, tau)).unwrap();
                let diff = (dj.value - pr.value).norm();
                let tol = 10.0 * tau * (1.0 + pr.value.norm()) + dj.err_estimate + pr.err_estimate;
                assert!(diff <= tol, "a={a} b={b} z={z} k={k}: diff {diff:e} tol {tol:e}");
            }
        }
    }
}

#[test]
fn cross_method_agreement_where_both_succeed() {
    // Wherever the series accepts its own bound and the LT reports success,
    // |series - LT| <= bound_used + τ.
    let tau = 1e-14;
    for &(a, b) in &[(0.7, 1.0), (1.2, 0.8)] {
        let p = params(a, b);
        for &(re, im) in &[(0.5, 0.3), (-0.8, 0.4), (1.5, -1.0), (2.5, 2.5)] {
            let z = Complex64::new(re, im);
            for k in 0..=2usize {
                let series = match ml_series(z, k, p, tau) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                let lt = match lt_derivative(z, k, p, tau) {
                    Ok(l) => l,
                    Err(_) => continue,
                };
                let diff = (series.0.value - lt.value).norm();
                let tol = series.1.bound_used + tau * (1.0 + lt.value.norm()) + lt.err_estimate;
                assert!(diff <= tol, "a={a} b={b} z={z} k={k}: diff {diff:e} tol {tol:e}");
            }
        }
    }
}

#[test]
fn engines_reproduce_the_exponential_on_their_domains() {
    // α = β = 1: every engine that accepts an argument must reproduce e^z
    // to 1e-13 relative.
    let p = params(1.0, 1.0);
    for &re in &[-25.0, -10.0, -2.0, 0.5, 3.0, десять(), 30.0] {
        let z = Complex64::new(re, 0.4 * re);
        let want = z.exp();
        if let Ok((s, _)) = ml_series(z, 0, p, 1e-15) {
            assert!((s.value - want).norm() <= 1e-13 * want.norm(), "series at {z}");
        }
        let lt = lt_derivative(z, 0, p, 1e-15).unwrap();
        assert!((lt.value - want).norm() <= 1e-13 * want.norm(), "lt at {z}");
    }
}

fn десять() -> f64 {
    10.0
}

#[test]
fn atomic_block_divided_difference_for_ml_function() {
    // 2x2 upper-triangular block with nearly confluent eigenvalues under
    // f = E_{0.6,1}: superdiagonal entry is the divided difference, checked
    // in extended precision.
    let p = params(0.6, 1.0);
    let a = Complex64::new(1.0, 0.0);
    let b = Complex64::new(1.0001, 0.0);
    let t = array![[a, Complex64::new(1.0, 0.0)], [Complex64::new(0.0, 0.0), b]];
    let oracle = FnOracle::new(move |sigma: Complex64, max_order| {
        (0..=max_order)
            .map(|k| Ok(ml_derivative(sigma, k, p, 1e-15)?.value))
            .collect()
    });
    let r = atomic_block_fun(&t, &oracle).unwrap();
    let (dre, dim) = mlfun_oracle::ml_divided_difference((a.re, a.im), (b.re, b.im), 0.6, 1.0, 40);
    let dd = Complex64::new(dre, dim);
    assert!((r.value[[0, 1]] - dd).norm() <= 1e-12 * dd.norm(), "got {} want {dd}", r.value[[0, 1]]);
    let f_a = oracle_value(a, 0, p);
    assert!((r.value[[0, 0]] - f_a).norm() <= 1e-13 * f_a.norm());
}

#[test]
fn reorder_groups_interleaved_clusters() {
    // diag (1, 2, 1, 2) with tiny couplings: clusters must end contiguous
    // as (1, 1, 2, 2).
    let c = |x: f64| Complex64::new(x, 0.0);
    let t = array![
        [c(1.0), c(0.3), c(0.0), c(0.1)],
        [c(0.0), c(2.0), c(0.2), c(0.0)],
        [c(0.0), c(0.0), c(1.0), c(0.4)],
        [c(0.0), c(0.0), c(0.0), c(2.0)],
    ];
    let form = schur_decompose(&t).unwrap();
    let pattern = cluster_eigenvalues(&form.eigenvalues(), 0.1);
    let (re, confluent) = reorder_schur(form, &pattern).unwrap();
    let diag: Vec<f64> = (0..4).map(|i| re.t[[i, i]].re).collect();
    assert_eq!(diag, vec![1.0, 1.0, 2.0, 2.0]);
    assert_eq!(confluent.boundaries, vec![0, 2]);
    // similarity preserved
    let recon = re.q.dot(&re.t).dot(&mlfun::linalg::conj_transpose(&re.q));
    assert!(mlfun::linalg::fro_norm(&(&recon - &t)) < 1e-14);
}
