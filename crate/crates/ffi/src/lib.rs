//! C ABI for the mlfun library.
//!
//! Conventions: every function returns an [`MlfunStatus`] code; results leave
//! through caller-provided buffers. Matrices cross the boundary as row-major
//! `f64` pairs (separate real/imaginary arrays, the imaginary one optional).
//! Matrix handles are opaque and cache the Schur factorization, so repeated
//! evaluations of the same matrix at different parameters stay cheap. The
//! header `include/mlfun.h` is generated by cbindgen at build time.

use mlfun::conditioning::cond_estimate;
use mlfun::error::MlError;
use mlfun::funm::{schur_decompose, SchurForm};
use mlfun::linalg::conj_transpose;
use mlfun::matrix_ml::{ml_matrix, MatrixMLRequest};
use mlfun::ml_scalar::{ml_derivative, Method};
use mlfun::MLParams;
use ndarray::Array2;
use num_complex::Complex64;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlfunStatus {
    Ok = 0,
    /// A result was produced but its error estimate exceeds the target.
    AccuracyDegraded = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    DimensionError = 4,
    ComputeError = 5,
}

/// Method tags of scalar evaluations, mirroring the library enum.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlfunMethod {
    Series = 0,
    LaplaceInversion = 1,
    PrabhakarSf = 2,
    DjrbashianSf = 3,
    Balanced = 4,
    Exact0 = 5,
}

impl From<Method> for MlfunMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Series => MlfunMethod::Series,
            Method::LaplaceInversion => MlfunMethod::LaplaceInversion,
            Method::PrabhakarSF => MlfunMethod::PrabhakarSf,
            Method::DjrbashianSF => MlfunMethod::DjrbashianSf,
            Method::Balanced => MlfunMethod::Balanced,
            Method::Exact0 => MlfunMethod::Exact0,
        }
    }
}

/// Result of a scalar derivative evaluation.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MlfunDerivResult {
    pub value_re: f64,
    pub value_im: f64,
    pub err_estimate: f64,
    pub terms_or_nodes: usize,
    pub method: MlfunMethod,
}

fn status_of(e: &MlError) -> MlfunStatus {
    match e {
        MlError::DimensionError(_) => MlfunStatus::DimensionError,
        MlError::InvalidArgument(_) | MlError::ParseError(_) | MlError::IrrationalOrder(_) => {
            MlfunStatus::InvalidArgument
        }
        _ => MlfunStatus::ComputeError,
    }
}

/// Evaluate the k-th derivative of E_{alpha,beta} at z = z_re + i z_im.
///
/// `tau <= 0` selects the default target accuracy. Returns `Ok` or
/// `AccuracyDegraded` with the result written to `out`; other codes leave
/// `out` untouched.
///
/// # Safety
/// `out` must point to a writable `MlfunDerivResult`.
#[no_mangle]
pub unsafe extern "C" fn mlfun_eval_deriv(
    alpha: f64,
    beta: f64,
    z_re: f64,
    z_im: f64,
    k: usize,
    tau: f64,
    out: *mut MlfunDerivResult,
) -> MlfunStatus {
    if out.is_null() {
        return MlfunStatus::NullPointer;
    }
    let tau = if tau > 0.0 { tau } else { mlfun::DEFAULT_TAU };
    let p = match MLParams::new(alpha, beta) {
        Ok(p) => p,
        Err(_) => return MlfunStatus::InvalidArgument,
    };
    match ml_derivative(Complex64::new(z_re, z_im), k, p, tau) {
        Ok(ev) => {
            let degraded = ev.degraded(tau);
            unsafe {
                *out = MlfunDerivResult {
                    value_re: ev.value.re,
                    value_im: ev.value.im,
                    err_estimate: ev.err_estimate,
                    terms_or_nodes: ev.terms_or_nodes,
                    method: ev.method.into(),
                };
            }
            if degraded {
                MlfunStatus::AccuracyDegraded
            } else {
                MlfunStatus::Ok
            }
        }
        Err(e) => status_of(&e),
    }
}

/// Opaque matrix handle holding the argument and its Schur factorization.
pub struct MlfunMatrix {
    a: Array2<Complex64>,
    schur: Option<SchurForm>,
}

/// Create a matrix handle from row-major data. `im` may be null for a real
/// matrix. Returns null on invalid input.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `n*n` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn mlfun_matrix_create(
    n: usize,
    re: *const f64,
    im: *const f64,
) -> *mut MlfunMatrix {
    if n == 0 || re.is_null() {
        return std::ptr::null_mut();
    }
    let res = unsafe { std::slice::from_raw_parts(re, n * n) };
    let ims = if im.is_null() {
        None
    } else {
        Some(unsafe { std::slice::from_raw_parts(im, n * n) })
    };
    let a = Array2::from_shape_fn((n, n), |(i, j)| {
        Complex64::new(res[i * n + j], ims.map_or(0.0, |s| s[i * n + j]))
    });
    if a.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return std::ptr::null_mut();
    }
    Box::into_raw(Box::new(MlfunMatrix { a, schur: None }))
}

/// Release a matrix handle.
///
/// # Safety
/// `handle` must come from `mlfun_matrix_create` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mlfun_matrix_free(handle: *mut MlfunMatrix) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Dimension of the matrix held by a handle (0 for null).
///
/// # Safety
/// `handle` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn mlfun_matrix_dim(handle: *const MlfunMatrix) -> usize {
    if handle.is_null() {
        0
    } else {
        unsafe { &*handle }.a.nrows()
    }
}

/// Evaluate E_{alpha,beta}(A) into row-major buffers `out_re`/`out_im`
/// (each of length n*n; `out_im` may be null to discard imaginary parts).
/// `max_order` (optional) receives the highest Taylor order consumed.
///
/// # Safety
/// Buffers must be writable with n*n doubles; `handle` must be live.
#[no_mangle]
pub unsafe extern "C" fn mlfun_matrix_ml(
    handle: *mut MlfunMatrix,
    alpha: f64,
    beta: f64,
    tau: f64,
    delta: f64,
    out_re: *mut f64,
    out_im: *mut f64,
    max_order: *mut usize,
) -> MlfunStatus {
    if handle.is_null() || out_re.is_null() {
        return MlfunStatus::NullPointer;
    }
    let m = unsafe { &mut *handle };
    let p = match MLParams::new(alpha, beta) {
        Ok(p) => p,
        Err(_) => return MlfunStatus::InvalidArgument,
    };
    let tau = if tau > 0.0 { tau } else { mlfun::DEFAULT_TAU };
    let delta = if delta > 0.0 { delta } else { mlfun::DEFAULT_DELTA };
    let n = m.a.nrows();

    if m.schur.is_none() {
        m.schur = match schur_decompose(&m.a) {
            Ok(f) => Some(f),
            Err(e) => return status_of(&e),
        };
    }
    let form = m.schur.as_ref().expect("factorization cached above");
    let req = MatrixMLRequest { a: form.t.clone(), params: p, tau, delta };
    let result = match ml_matrix(&req) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    let full = form.q.dot(&result.value).dot(&conj_transpose(&form.q));
    let input_real = m.a.iter().all(|x| x.im == 0.0);
    unsafe {
        let res = std::slice::from_raw_parts_mut(out_re, n * n);
        for i in 0..n {
            for j in 0..n {
                res[i * n + j] = full[[i, j]].re;
            }
        }
        if !out_im.is_null() {
            let ims = std::slice::from_raw_parts_mut(out_im, n * n);
            for i in 0..n {
                for j in 0..n {
                    ims[i * n + j] = if input_real { 0.0 } else { full[[i, j]].im };
                }
            }
        }
        if !max_order.is_null() {
            *max_order = result.max_derivative_order;
        }
    }
    let scale = 1.0 + full.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if result.err_estimate > tau * scale {
        MlfunStatus::AccuracyDegraded
    } else {
        MlfunStatus::Ok
    }
}

/// Frobenius-norm condition numbers of E_{alpha,beta} at the handle's matrix.
///
/// # Safety
/// `kappa_abs`/`kappa_rel` must be writable; `handle` must be live.
#[no_mangle]
pub unsafe extern "C" fn mlfun_cond_estimate(
    handle: *const MlfunMatrix,
    alpha: f64,
    beta: f64,
    probes: usize,
    kappa_abs: *mut f64,
    kappa_rel: *mut f64,
) -> MlfunStatus {
    if handle.is_null() || kappa_abs.is_null() || kappa_rel.is_null() {
        return MlfunStatus::NullPointer;
    }
    let m = unsafe { &*handle };
    let p = match MLParams::new(alpha, beta) {
        Ok(p) => p,
        Err(_) => return MlfunStatus::InvalidArgument,
    };
    match cond_estimate(&m.a, p, probes.max(1)) {
        Ok(r) => {
            unsafe {
                *kappa_abs = r.kappa_abs;
                *kappa_rel = r.kappa_rel;
            }
            MlfunStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Version string of the library (static storage, do not free).
#[no_mangle]
pub extern "C" fn mlfun_version() -> *const std::os::raw::c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const std::os::raw::c_char
}
