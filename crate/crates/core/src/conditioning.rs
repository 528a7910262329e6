//! Fréchet derivatives and condition numbers of the matrix ML evaluation.

use crate::error::{MlError, Result};
use crate::linalg::{conj_transpose, fro_norm, CMat};
use crate::matrix_ml::{ml_matrix, MatrixMLRequest};
use crate::params::MLParams;
use ndarray::{s, Array2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    One,
    Frobenius,
}

/// Absolute and relative condition numbers of E_{α,β} at A.
#[derive(Debug, Clone)]
pub struct CondReport {
    pub kappa_abs: f64,
    pub kappa_rel: f64,
    pub norm_used: NormKind,
    pub probes: usize,
}

/// Matrix-function evaluator used by the Fréchet machinery.
pub type MatrixFnEval<'a> = dyn Fn(&CMat) -> Result<CMat> + 'a;

/// Fréchet derivative L(A, E) through the block embedding: f applied to
/// [[A, E], [0, A]] carries L(A, E) in its upper-right block.
pub fn frechet_apply(a: &CMat, e: &CMat, f: &MatrixFnEval) -> Result<CMat> {
    let n = a.nrows();
    if e.nrows() != n || e.ncols() != n || a.ncols() != n {
        return Err(MlError::DimensionError("A and E must be square of equal size".into()));
    }
    let mut block = Array2::from_elem((2 * n, 2 * n), Complex64::new(0.0, 0.0));
    block.slice_mut(s![0..n, 0..n]).assign(a);
    block.slice_mut(s![0..n, n..2 * n]).assign(e);
    block.slice_mut(s![n..2 * n, n..2 * n]).assign(a);
    let fb = f(&block)?;
    Ok(fb.slice(s![0..n, n..2 * n]).to_owned())
}

/// Condition numbers of E_{α,β}(A) in the Frobenius norm, with ||L(A)||
/// estimated by power iteration on E -> L(A*, L(A, E)); the adjoint map is
/// L evaluated at the conjugate-transpose argument. `probes` seeded restarts,
/// reported as a lower-bound estimate.
pub fn cond_estimate(a: &CMat, p: MLParams, probes: usize) -> Result<CondReport> {
    if probes == 0 {
        return Err(MlError::InvalidArgument("at least one probe is required".into()));
    }
    let n = a.nrows();
    let eval = |m: &CMat| -> Result<CMat> {
        Ok(ml_matrix(&MatrixMLRequest::new(m.clone(), p))?.value)
    };
    let fa = eval(a)?;
    let fa_norm = fro_norm(&fa);
    if fa_norm == 0.0 {
        return Err(MlError::ZeroFunctionNorm);
    }
    let a_star = conj_transpose(a);

    let mut best = 0.0f64;
    for probe in 0..probes {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + probe as u64);
        let mut x = Array2::from_shape_fn((n, n), |_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let xn = fro_norm(&x);
        x.map_inplace(|v| *v /= xn);
        let mut sigma = 0.0f64;
        for _ in 0..24 {
            let y = frechet_apply(a, &x, &eval)?;
            let yn = fro_norm(&y);
            if yn == 0.0 {
                break;
            }
            let w = frechet_apply(&a_star, &y, &eval)?;
            let wn = fro_norm(&w);
            sigma = yn; // ||L(A, x)|| with ||x|| = 1
            if wn == 0.0 {
                break;
            }
            let prev = x.clone();
            x = w.map(|v| v / wn);
            if fro_norm(&(&x - &prev)) < 1e-12 {
                break;
            }
        }
        best = best.max(sigma);
    }

    let kappa_abs = best;
    let kappa_rel = kappa_abs * fro_norm(a) / fa_norm;
    Ok(CondReport { kappa_abs, kappa_rel, norm_used: NormKind::Frobenius, probes })
}
