//! Matrix ML accuracy against the extended-precision matrix Taylor oracle.

use mlfun::gallery;
use mlfun::{ml_matrix, MatrixMLRequest, MLParams};
use ndarray::Array2;
use num_complex::Complex64;

fn paper_metric(got: &Array2<Complex64>, want: &Array2<Complex64>) -> f64 {
    let diff = got - want;
    let dn = diff.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let wn = want.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    dn / (1.0 + wn)
}

fn to_rows(a: &Array2<Complex64>) -> Vec<Vec<Complex64>> {
    (0..a.nrows()).map(|i| (0..a.ncols()).map(|j| a[[i, j]]).collect()).collect()
}

fn from_rows(rows: Vec<Vec<Complex64>>) -> Array2<Complex64> {
    let n = rows.len();
    Array2::from_shape_fn((n, n), |(i, j)| rows[i][j])
}

#[test]
fn negated_redheffer_matches_matrix_taylor() {
    for &(n, alpha) in &[(8usize, 0.5f64), (12, 0.8), (8, 1.2)] {
        let a = gallery::to_complex(&gallery::redheffer(n)).map(|x| -x);
        let req = MatrixMLRequest::new(a.clone(), MLParams::new(alpha, 1.0).unwrap());
        let got = ml_matrix(&req).unwrap();
        let want = from_rows(mlfun_oracle::matrix::matrix_taylor_big_f64(&to_rows(&a), alpha, 1.0, 40));
        let m = paper_metric(&got.value, &want);
        println!("  redheffer n={n} alpha={alpha}: metric {m:.2e}, max order {}", got.max_derivative_order);
        assert!(m <= 5e-13, "n={n} alpha={alpha}: metric {m:e}");
    }
}

#[test]
fn clustered_spectrum_sample_matches_oracle() {
    let a = gallery::to_complex(&gallery::clustered_spectrum_40(2024));
    let alpha = 0.6;
    let req = MatrixMLRequest::new(a.clone(), MLParams::new(alpha, 1.0).unwrap());
    let got = ml_matrix(&req).unwrap();
    let want = from_rows(mlfun_oracle::matrix::matrix_taylor_big_f64(&to_rows(&a), alpha, 1.0, 35));
    let m = paper_metric(&got.value, &want);
    println!("  clustered-40 alpha={alpha}: metric {m:.2e}");
    assert!(m <= 1e-11, "metric {m:e}");
}
