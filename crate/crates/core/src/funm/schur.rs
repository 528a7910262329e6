//! Complex Schur decomposition by Householder Hessenberg reduction and
//! explicitly shifted QR iteration with deflation, plus the unitary
//! adjacent-swap reordering used to make clusters contiguous.

use crate::error::{MlError, Result};
use crate::linalg::{conj_transpose, fro_norm, identity, is_upper_triangular, CMat};
use num_complex::Complex64;

/// Unitary-triangular factorization A = Q T Q*.
#[derive(Debug, Clone)]
pub struct SchurForm {
    pub q: CMat,
    pub t: CMat,
}

impl SchurForm {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        (0..self.t.nrows()).map(|i| self.t[[i, i]]).collect()
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Complex Givens rotation: returns (c, s) with c real so that
/// [[c, s], [-conj(s), c]] · [f, g]^T = [r, 0]^T.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    if g == ZERO {
        return (1.0, ZERO);
    }
    if f == ZERO {
        // r = |g|, s = conj(g)/|g|
        return (0.0, g.conj() / g.norm());
    }
    let fa = f.norm();
    let d = (fa * fa + g.norm_sqr()).sqrt();
    let c = fa / d;
    let s = (f / fa) * g.conj() / d;
    (c, s)
}

/// Householder reduction to upper Hessenberg form; returns (H, Q0) with
/// A = Q0 H Q0*.
fn hessenberg(a: &CMat) -> (CMat, CMat) {
    let n = a.nrows();
    let mut h = a.clone();
    let mut q = identity(n);
    for k in 0..n.saturating_sub(2) {
        // Reflector annihilating h[k+2.., k].
        let mut x: Vec<Complex64> = (k + 1..n).map(|i| h[[i, k]]).collect();
        let xnorm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = x[0];
        let phase = if x0 == ZERO { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        x[0] -= alpha;
        let vnorm_sq = x.iter().map(|v| v.norm_sqr()).sum::<f64>();
        if vnorm_sq == 0.0 {
            continue;
        }
        // P = I - 2 v v^H / (v^H v), applied to rows k+1.. and columns k+1..
        let m = n - k - 1;
        // left: h[k+1.., :] -= 2 v (v^H h[k+1.., :]) / vnorm_sq
        for col in 0..n {
            let mut dot = ZERO;
            for i in 0..m {
                dot += x[i].conj() * h[[k + 1 + i, col]];
            }
            let f = dot * (2.0 / vnorm_sq);
            for i in 0..m {
                let xi = x[i];
                h[[k + 1 + i, col]] -= f * xi;
            }
        }
        // right: h[:, k+1..] -= 2 (h[:, k+1..] v) v^H / vnorm_sq
        for row in 0..n {
            let mut dot = ZERO;
            for i in 0..m {
                dot += h[[row, k + 1 + i]] * x[i];
            }
            let f = dot * (2.0 / vnorm_sq);
            for i in 0..m {
                h[[row, k + 1 + i]] -= f * x[i].conj();
            }
        }
        // accumulate into q (right multiplication)
        for row in 0..n {
            let mut dot = ZERO;
            for i in 0..m {
                dot += q[[row, k + 1 + i]] * x[i];
            }
            let f = dot * (2.0 / vnorm_sq);
            for i in 0..m {
                q[[row, k + 1 + i]] -= f * x[i].conj();
            }
        }
        for i in k + 2..n {
            h[[i, k]] = ZERO;
        }
        h[[k + 1, k]] = alpha;
    }
    (h, q)
}

/// Eigenvalue of the 2x2 block closest to its bottom-right entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let tr_half = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let sq = disc.sqrt();
    let l1 = tr_half + sq;
    let l2 = tr_half - sq;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Schur decomposition. Exactly upper-triangular inputs pass through with
/// Q = I; everything else goes through Hessenberg + shifted QR.
pub fn schur_decompose(a: &CMat) -> Result<SchurForm> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(MlError::DimensionError(format!("square matrix required, got {}x{}", n, a.ncols())));
    }
    if a.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return Err(MlError::InvalidArgument("matrix entries must be finite".into()));
    }
    if n == 0 {
        return Ok(SchurForm { q: identity(0), t: a.clone() });
    }
    if is_upper_triangular(a) {
        return Ok(SchurForm { q: identity(n), t: a.clone() });
    }
    let scale = fro_norm(a).max(f64::MIN_POSITIVE);
    let (mut h, mut q) = hessenberg(a);

    let mut hi = n - 1;
    let mut iters_here = 0usize;
    let mut total = 0usize;
    let max_total = 60 * n;
    while hi > 0 {
        // Deflate negligible subdiagonals in [0..=hi].
        let mut lo = hi;
        while lo > 0 {
            let sub = h[[lo, lo - 1]].norm();
            let local = h[[lo - 1, lo - 1]].norm() + h[[lo, lo]].norm();
            let thresh = f64::EPSILON * if local > 0.0 { local } else { scale };
            if sub <= thresh {
                h[[lo, lo - 1]] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iters_here = 0;
            continue;
        }

        total += 1;
        iters_here += 1;
        if total > max_total {
            return Err(MlError::NoConvergence(hi));
        }
        let shift = if iters_here % 14 == 0 {
            // exceptional shift breaks symmetric stagnation
            h[[hi, hi]] + 0.75 * h[[hi, hi - 1]].norm()
        } else {
            wilkinson_shift(h[[hi - 1, hi - 1]], h[[hi - 1, hi]], h[[hi, hi - 1]], h[[hi, hi]])
        };

        for i in lo..=hi {
            h[[i, i]] -= shift;
        }
        // QR of the active window by a chain of Givens rotations.
        let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let (c, s) = givens(h[[i, i]], h[[i + 1, i]]);
            for col in i..n {
                let x = h[[i, col]];
                let y = h[[i + 1, col]];
                h[[i, col]] = c * x + s * y;
                h[[i + 1, col]] = -s.conj() * x + c * y;
            }
            h[[i + 1, i]] = ZERO;
            rots.push((c, s));
        }
        // Right-multiply by the adjoints; restores Hessenberg form.
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let i = lo + idx;
            let top = (i + 1).min(n - 1);
            for row in 0..=top {
                let x = h[[row, i]];
                let y = h[[row, i + 1]];
                h[[row, i]] = c * x + s.conj() * y;
                h[[row, i + 1]] = -s * x + c * y;
            }
            for row in 0..n {
                let x = q[[row, i]];
                let y = q[[row, i + 1]];
                q[[row, i]] = c * x + s.conj() * y;
                q[[row, i + 1]] = -s * x + c * y;
            }
        }
        for i in lo..=hi {
            h[[i, i]] += shift;
        }
    }

    for i in 1..n {
        for j in 0..i {
            h[[i, j]] = ZERO;
        }
    }
    Ok(SchurForm { q, t: h })
}

/// Swap the diagonal entries at positions (i, i+1) of T by a unitary
/// similarity, updating Q alongside.
pub(crate) fn swap_adjacent(t: &mut CMat, q: &mut CMat, i: usize, scale: f64) -> Result<()> {
    let n = t.nrows();
    let t11 = t[[i, i]];
    let t22 = t[[i + 1, i + 1]];
    let t12 = t[[i, i + 1]];
    let v1 = t12;
    let v2 = t22 - t11;
    let nrm = (v1.norm_sqr() + v2.norm_sqr()).sqrt();
    if nrm <= f64::EPSILON * scale {
        // numerically identical eigenvalues: order is immaterial
        return Ok(());
    }
    // Unitary G with first column the (t22)-eigenvector [t12, t22-t11]/nrm.
    let g11 = v1 / nrm;
    let g21 = v2 / nrm;
    let g12 = -g21.conj();
    let g22 = g11.conj();
    // T <- G^H T G ; Q <- Q G
    for col in 0..n {
        let x = t[[i, col]];
        let y = t[[i + 1, col]];
        t[[i, col]] = g11.conj() * x + g21.conj() * y;
        t[[i + 1, col]] = g12.conj() * x + g22.conj() * y;
    }
    for row in 0..n {
        let x = t[[row, i]];
        let y = t[[row, i + 1]];
        t[[row, i]] = x * g11 + y * g21;
        t[[row, i + 1]] = x * g12 + y * g22;
    }
    for row in 0..n {
        let x = q[[row, i]];
        let y = q[[row, i + 1]];
        q[[row, i]] = x * g11 + y * g21;
        q[[row, i + 1]] = x * g12 + y * g22;
    }
    let resid = t[[i + 1, i]].norm();
    if resid > 1e3 * f64::EPSILON * scale.max(1e-300) {
        return Err(MlError::SwapInstability(i));
    }
    t[[i + 1, i]] = ZERO;
    Ok(())
}

/// Residual ||Q T Q* - A||_F of a Schur form against the original matrix.
pub fn schur_residual(a: &CMat, form: &SchurForm) -> f64 {
    let recon = form.q.dot(&form.t).dot(&conj_transpose(&form.q));
    fro_norm(&(&recon - a))
}
