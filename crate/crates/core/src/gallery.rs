//! Test matrices: Redheffer, seeded orthogonal similarities with prescribed
//! spectra, and polynomial companion matrices.

use crate::linalg::CMat;
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Redheffer matrix: a_ij = 1 when j = 1 or i divides j (1-based), else 0.
/// Its unit eigenvalue has multiplicity n - floor(log2 n) - 1.
pub fn redheffer(n: usize) -> Array2<f64> {
    Array2::from_shape_fn((n, n), |(i, j)| {
        let (i, j) = (i + 1, j + 1);
        if j == 1 || j % i == 0 {
            1.0
        } else {
            0.0
        }
    })
}

/// Random real orthogonal matrix from Householder QR of a seeded Gaussian-ish
/// matrix, with the R diagonal sign fixed for determinism.
pub fn random_orthogonal(n: usize, seed: u64) -> Array2<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Array2::from_shape_fn((n, n), |_| rng.gen_range(-1.0..1.0f64));
    let mut q = Array2::from_diag_elem(n, 1.0);
    for k in 0..n - 1 {
        let mut v: Vec<f64> = (k..n).map(|i| a[[i, k]]).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        v[0] += v[0].signum() * norm;
        let vn: f64 = v.iter().map(|x| x * x).sum();
        if vn == 0.0 {
            continue;
        }
        let m = n - k;
        for col in 0..n {
            let mut dot = 0.0;
            for i in 0..m {
                dot += v[i] * a[[k + i, col]];
            }
            let f = 2.0 * dot / vn;
            for i in 0..m {
                a[[k + i, col]] -= f * v[i];
            }
        }
        for col in 0..n {
            let mut dot = 0.0;
            for i in 0..m {
                dot += v[i] * q[[k + i, col]];
            }
            let f = 2.0 * dot / vn;
            for i in 0..m {
                q[[k + i, col]] -= f * v[i];
            }
        }
    }
    // q now holds the product of reflectors applied to I, i.e. Q^T; fix the
    // signs so that R = Q^T A has positive diagonal, then return Q.
    let mut qt = q;
    for i in 0..n {
        if a[[i, i]] < 0.0 {
            for col in 0..n {
                qt[[i, col]] = -qt[[i, col]];
            }
        }
    }
    qt.t().to_owned()
}

/// Real symmetric-free matrix with prescribed eigenvalues via an orthogonal
/// similarity: A = Q diag(spec) Q^T. `spec` lists (eigenvalue, multiplicity).
pub fn orthogonally_similar_spectrum(spec: &[(f64, usize)], seed: u64) -> Array2<f64> {
    let n: usize = spec.iter().map(|&(_, m)| m).sum();
    let mut diag = Vec::with_capacity(n);
    for &(lam, mult) in spec {
        diag.extend(std::iter::repeat(lam).take(mult));
    }
    let d = Array2::from_diag(&Array1::from_vec(diag));
    let q = random_orthogonal(n, seed);
    q.dot(&d).dot(&q.t())
}

/// The Example-2-style 40x40 spectrum: ±1 (5), ±1.0001 (4), ±1.001 (4),
/// ±1.01 (4), ±1.1 (3).
pub fn clustered_spectrum_40(seed: u64) -> Array2<f64> {
    let mut spec = Vec::new();
    for &(lam, m) in &[(1.0, 5), (1.0001, 4), (1.001, 4), (1.01, 4), (1.1, 3)] {
        spec.push((lam, m));
        spec.push((-lam, m));
    }
    orthogonally_similar_spectrum(&spec, seed)
}

/// Companion matrix (last-row convention) of the monic polynomial
/// λ^n + c_{n-1} λ^(n-1) + ... + c_0 given the low-order coefficients c.
pub fn companion(low_coeffs: &[f64]) -> Array2<f64> {
    let n = low_coeffs.len();
    let mut a = Array2::zeros((n, n));
    for i in 0..n - 1 {
        a[[i, i + 1]] = 1.0;
    }
    for j in 0..n {
        a[[n - 1, j]] = -low_coeffs[j];
    }
    a
}

pub fn to_complex(a: &Array2<f64>) -> CMat {
    a.map(|&x| Complex64::new(x, 0.0))
}
