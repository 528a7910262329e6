//! Generic dense-matrix function evaluation by the Schur-Parlett approach.

mod atomic;
mod cluster;
mod schur;
mod sylvester;

pub use atomic::{atomic_block_fun, AtomicResult, MAX_TAYLOR_ORDER};
pub use cluster::{cluster_eigenvalues, BlockPattern};
pub use schur::{schur_decompose, schur_residual, SchurForm};
pub use sylvester::sylvester_triangular;

use crate::error::{MlError, Result};
use crate::linalg::{conj_transpose, fro_norm, is_diagonal, is_hermitian, CMat};
use ndarray::s;
use num_complex::Complex64;

/// Supplier of scalar derivative values f^(0..max_order)(σ) for the Taylor
/// expansion of atomic blocks.
pub trait DerivativeOracle {
    fn derivatives(&self, sigma: Complex64, max_order: usize) -> Result<Vec<Complex64>>;
}

/// Closure-backed oracle, mostly for tests and the exponential reference.
pub struct FnOracle<F: Fn(Complex64, usize) -> Result<Vec<Complex64>>> {
    f: F,
}

impl<F: Fn(Complex64, usize) -> Result<Vec<Complex64>>> FnOracle<F> {
    pub fn new(f: F) -> Self {
        Self { f }
    }
}

impl<F: Fn(Complex64, usize) -> Result<Vec<Complex64>>> DerivativeOracle for FnOracle<F> {
    fn derivatives(&self, sigma: Complex64, max_order: usize) -> Result<Vec<Complex64>> {
        let v = (self.f)(sigma, max_order)?;
        if v.len() < max_order + 1 {
            return Err(MlError::InvalidArgument(format!(
                "oracle returned {} values for max order {max_order}",
                v.len()
            )));
        }
        Ok(v)
    }
}

/// Diagnostics from a funm evaluation.
#[derive(Debug, Clone, Default)]
pub struct FunmReport {
    /// Highest derivative order requested from the oracle.
    pub max_order: usize,
    /// (start, size, taylor terms used) per diagonal block.
    pub block_orders: Vec<(usize, usize, usize)>,
    pub hermitian_fastpath: bool,
    pub diagonal_shortcut: bool,
}

/// Reorder a Schur form so each cluster is contiguous, clusters in id order,
/// eigenvalues within a cluster by descending modulus (ties by argument).
pub fn reorder_schur(form: SchurForm, pattern: &BlockPattern) -> Result<(SchurForm, BlockPattern)> {
    let n = form.t.nrows();
    let eigs = form.eigenvalues();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        pattern.cluster_of[a]
            .cmp(&pattern.cluster_of[b])
            .then(eigs[b].norm().total_cmp(&eigs[a].norm()))
            .then(eigs[a].arg().total_cmp(&eigs[b].arg()))
            .then(a.cmp(&b))
    });
    let mut t = form.t;
    let mut q = form.q;
    let scale = fro_norm(&t).max(f64::MIN_POSITIVE);
    let mut content: Vec<usize> = (0..n).collect();
    for target_pos in 0..n {
        let want = order[target_pos];
        let mut cur = content.iter().position(|&x| x == want).expect("tracked index");
        while cur > target_pos {
            schur::swap_adjacent(&mut t, &mut q, cur - 1, scale)?;
            content.swap(cur - 1, cur);
            cur -= 1;
        }
    }
    let cluster_of: Vec<usize> = content.iter().map(|&orig| pattern.cluster_of[orig]).collect();
    let mut boundaries = Vec::new();
    for (pos, &c) in cluster_of.iter().enumerate() {
        if pos == 0 || c != cluster_of[pos - 1] {
            boundaries.push(pos);
        }
    }
    let confluent = BlockPattern { cluster_of, boundaries, delta: pattern.delta };
    Ok((SchurForm { q, t }, confluent))
}

/// f(A) assembled from atomic blocks and the block Parlett recurrence.
pub fn funm(a: &CMat, oracle: &dyn DerivativeOracle, delta: f64) -> Result<(CMat, FunmReport)> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(MlError::DimensionError(format!("square matrix required, got {}x{}", n, a.ncols())));
    }
    if n == 0 {
        return Ok((a.clone(), FunmReport::default()));
    }
    if !(delta > 0.0) {
        return Err(MlError::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    if a.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return Err(MlError::InvalidArgument("matrix entries must be finite".into()));
    }

    if is_diagonal(a) {
        let mut f = a.clone();
        for i in 0..n {
            f[[i, i]] = oracle.derivatives(a[[i, i]], 0)?[0];
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    f[[i, j]] = Complex64::new(0.0, 0.0);
                }
            }
        }
        return Ok((f, FunmReport { diagonal_shortcut: true, ..Default::default() }));
    }

    let scale = fro_norm(a);
    if is_hermitian(a, n as f64 * f64::EPSILON * scale) {
        // Spectral route: the Schur form of a Hermitian matrix is diagonal up
        // to round-off, so scalar evaluations on the diagonal suffice.
        let form = schur_decompose(a)?;
        let mut f = CMat::from_elem((n, n), Complex64::new(0.0, 0.0));
        for i in 0..n {
            f[[i, i]] = oracle.derivatives(form.t[[i, i]], 0)?[0];
        }
        let out = form.q.dot(&f).dot(&conj_transpose(&form.q));
        return Ok((out, FunmReport { hermitian_fastpath: true, ..Default::default() }));
    }

    let form = schur_decompose(a)?;
    let pattern = cluster_eigenvalues(&form.eigenvalues(), delta);
    let (form, confluent) = reorder_schur(form, &pattern)?;
    let t = &form.t;

    let nb = confluent.boundaries.len();
    let mut starts = confluent.boundaries.clone();
    starts.push(n);

    let mut f = CMat::from_elem((n, n), Complex64::new(0.0, 0.0));
    let mut report = FunmReport::default();
    for b in 0..nb {
        let (r0, r1) = (starts[b], starts[b + 1]);
        let tii = t.slice(s![r0..r1, r0..r1]).to_owned();
        let res = atomic_block_fun(&tii, oracle)?;
        report.max_order = report.max_order.max(res.terms_used.saturating_sub(1));
        report.block_orders.push((r0, r1 - r0, res.terms_used));
        f.slice_mut(s![r0..r1, r0..r1]).assign(&res.value);
    }

    // Parlett recurrence by superdiagonals.
    for d in 1..nb {
        for bi in 0..nb - d {
            let bj = bi + d;
            let (i0, i1) = (starts[bi], starts[bi + 1]);
            let (j0, j1) = (starts[bj], starts[bj + 1]);
            let tii = t.slice(s![i0..i1, i0..i1]).to_owned();
            let tjj = t.slice(s![j0..j1, j0..j1]).to_owned();
            let tij = t.slice(s![i0..i1, j0..j1]).to_owned();
            let fii = f.slice(s![i0..i1, i0..i1]).to_owned();
            let fjj = f.slice(s![j0..j1, j0..j1]).to_owned();
            let mut rhs = fii.dot(&tij) - tij.dot(&fjj);
            for bk in bi + 1..bj {
                let (k0, k1) = (starts[bk], starts[bk + 1]);
                let fik = f.slice(s![i0..i1, k0..k1]).to_owned();
                let tkj = t.slice(s![k0..k1, j0..j1]).to_owned();
                let tik = t.slice(s![i0..i1, k0..k1]).to_owned();
                let fkj = f.slice(s![k0..k1, j0..j1]).to_owned();
                rhs = rhs + fik.dot(&tkj) - tik.dot(&fkj);
            }
            let fij = sylvester_triangular(&tii, &tjj, &rhs)?;
            f.slice_mut(s![i0..i1, j0..j1]).assign(&fij);
        }
    }

    let out = form.q.dot(&f).dot(&conj_transpose(&form.q));
    Ok((out, report))
}
