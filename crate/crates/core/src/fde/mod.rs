//! Linear and multiterm fractional differential equations solved through
//! matrix Mittag-Leffler evaluations, plus a trapezoidal product-integration
//! comparator and Gramian computation.

mod companion;
mod gramian;
mod pi;

pub use companion::{companion_from_multiterm, CompanionSystem};
pub use gramian::{gramian, GramianKind, GramianResult};
pub use pi::trapezoidal_pi;

use crate::error::{MlError, Result};
use crate::funm::{schur_decompose, SchurForm};
use crate::linalg::{complexify, conj_transpose};
use crate::matrix_ml::{ml_matrix, MatrixMLRequest, DEFAULT_DELTA};
use crate::ml_scalar::DEFAULT_TAU;
use crate::params::MLParams;
use ndarray::{Array1, Array2};
use std::sync::Arc;

/// Forcing term of a linear FDE system.
#[derive(Clone)]
pub enum Forcing {
    None,
    /// f(t) = Σ c_l t^l applied along a fixed direction vector.
    Polynomial { coeffs: Vec<f64>, direction: Array1<f64> },
    /// Arbitrary smooth vector-valued source, sampled where needed.
    Sampled(Arc<dyn Fn(f64) -> Array1<f64> + Send + Sync>),
}

impl std::fmt::Debug for Forcing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Forcing::None => write!(f, "None"),
            Forcing::Polynomial { coeffs, .. } => write!(f, "Polynomial({coeffs:?})"),
            Forcing::Sampled(_) => write!(f, "Sampled(..)"),
        }
    }
}

/// D^α Y = A Y + forcing, with the m = ceil(α) initial vectors Y^(l)(0).
#[derive(Debug, Clone)]
pub struct LinearFdeSystem {
    pub a: Array2<f64>,
    pub alpha: f64,
    pub y0: Vec<Array1<f64>>,
    pub forcing: Forcing,
}

impl LinearFdeSystem {
    pub fn new(a: Array2<f64>, alpha: f64, y0: Vec<Array1<f64>>, forcing: Forcing) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(MlError::InvalidArgument(format!("alpha must be positive, got {alpha}")));
        }
        let n = a.nrows();
        if a.ncols() != n {
            return Err(MlError::DimensionError("A must be square".into()));
        }
        let m = alpha.ceil() as usize;
        if y0.len() != m {
            return Err(MlError::InvalidArgument(format!(
                "need m = ceil(alpha) = {m} initial vectors, got {}",
                y0.len()
            )));
        }
        for v in &y0 {
            if v.len() != n {
                return Err(MlError::DimensionError("initial vector length mismatch".into()));
            }
        }
        Ok(Self { a, alpha, y0, forcing })
    }
}

/// Scalar multiterm FDE Σ_k a_k D^(kα) y = f with rational α = p/q in
/// lowest terms, 0 < α < 1, and ceil(nα) initial values b.
#[derive(Debug, Clone)]
pub struct MultitermFde {
    pub a: Vec<f64>,
    pub alpha_p: u32,
    pub alpha_q: u32,
    pub b: Vec<f64>,
    pub forcing: ScalarForcing,
}

#[derive(Clone)]
pub enum ScalarForcing {
    None,
    Polynomial(Vec<f64>),
    Sampled(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for ScalarForcing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarForcing::None => write!(f, "None"),
            ScalarForcing::Polynomial(c) => write!(f, "Polynomial({c:?})"),
            ScalarForcing::Sampled(_) => write!(f, "Sampled(..)"),
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl MultitermFde {
    pub fn new(a: Vec<f64>, alpha_p: u32, alpha_q: u32, b: Vec<f64>, forcing: ScalarForcing) -> Result<Self> {
        if a.len() < 2 {
            return Err(MlError::InvalidArgument("need at least two coefficients a_0..a_n".into()));
        }
        if *a.last().unwrap() == 0.0 {
            return Err(MlError::InvalidArgument("leading coefficient a_n must be nonzero".into()));
        }
        if alpha_p == 0 || alpha_q == 0 || alpha_p >= alpha_q {
            return Err(MlError::InvalidArgument(format!(
                "order must satisfy 0 < p/q < 1, got {alpha_p}/{alpha_q}"
            )));
        }
        if gcd(alpha_p, alpha_q) != 1 {
            return Err(MlError::InvalidArgument(format!(
                "p/q = {alpha_p}/{alpha_q} must be in lowest terms"
            )));
        }
        let n = a.len() - 1;
        let m = (n as f64 * alpha_p as f64 / alpha_q as f64).ceil() as usize;
        if b.len() != m {
            return Err(MlError::InvalidArgument(format!(
                "need ceil(n alpha) = {m} initial values, got {}",
                b.len()
            )));
        }
        Ok(Self { a, alpha_p, alpha_q, b, forcing })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha_p as f64 / self.alpha_q as f64
    }
}

/// Schur factorization of a real system matrix, reused across time points:
/// E_{α,β}(s·A) = Q E_{α,β}(s·T) Q*.
pub struct MlSchurCache {
    form: SchurForm,
    alpha: f64,
    pub tau: f64,
    pub delta: f64,
}

impl MlSchurCache {
    pub fn new(a: &Array2<f64>, alpha: f64) -> Result<Self> {
        let form = schur_decompose(&complexify(a))?;
        Ok(Self { form, alpha, tau: DEFAULT_TAU, delta: DEFAULT_DELTA })
    }

    /// E_{α,β}(scale·A) as a real dense matrix.
    pub fn eval(&self, beta: f64, scale: f64) -> Result<Array2<f64>> {
        let tri = self.form.t.map(|x| x * scale);
        let r = ml_matrix(&MatrixMLRequest {
            a: tri,
            params: MLParams::new(self.alpha, beta)?,
            tau: self.tau,
            delta: self.delta,
        })?;
        let full = self.form.q.dot(&r.value).dot(&conj_transpose(&self.form.q));
        Ok(full.map(|x| x.re))
    }

    pub fn apply(&self, beta: f64, scale: f64, v: &Array1<f64>) -> Result<Array1<f64>> {
        Ok(self.eval(beta, scale)?.dot(v))
    }
}

/// Y(t) = Σ_{l=0}^{m-1} t^l E_{α,l+1}(t^α A) Y_0^l for the homogeneous system.
pub fn solve_linear_fde(sys: &LinearFdeSystem, t: f64) -> Result<Array1<f64>> {
    if !matches!(sys.forcing, Forcing::None) {
        return Err(MlError::InvalidArgument(
            "solve_linear_fde handles the homogeneous case; use solve_poly_source or solve_sampled_source".into(),
        ));
    }
    let cache = MlSchurCache::new(&sys.a, sys.alpha)?;
    solve_linear_fde_cached(sys, t, &cache)
}

pub fn solve_linear_fde_cached(sys: &LinearFdeSystem, t: f64, cache: &MlSchurCache) -> Result<Array1<f64>> {
    if t < 0.0 {
        return Err(MlError::InvalidArgument("t must be nonnegative".into()));
    }
    if t == 0.0 {
        return Ok(sys.y0[0].clone());
    }
    let targ = t.powf(sys.alpha);
    let mut y = Array1::zeros(sys.a.nrows());
    for (l, y0l) in sys.y0.iter().enumerate() {
        let term = cache.apply(l as f64 + 1.0, targ, y0l)?;
        y = y + term.map(|v| v * t.powi(l as i32));
    }
    Ok(y)
}

/// Closed form with a polynomial source along direction b (0 < α < 1):
/// Y(t) = E_{α,1}(t^α A) Y_0 + Σ_l l! c_l t^(α+l) E_{α,α+l+1}(t^α A) b.
pub fn solve_poly_source(sys: &LinearFdeSystem, t: f64) -> Result<Array1<f64>> {
    let cache = MlSchurCache::new(&sys.a, sys.alpha)?;
    solve_poly_source_cached(sys, t, &cache)
}

pub fn solve_poly_source_cached(sys: &LinearFdeSystem, t: f64, cache: &MlSchurCache) -> Result<Array1<f64>> {
    let (coeffs, direction) = match &sys.forcing {
        Forcing::Polynomial { coeffs, direction } => (coeffs.clone(), direction.clone()),
        Forcing::None => (Vec::new(), Array1::zeros(sys.a.nrows())),
        Forcing::Sampled(_) => {
            return Err(MlError::InvalidArgument("polynomial forcing required".into()))
        }
    };
    if !coeffs.is_empty() && !(sys.alpha < 1.0) {
        return Err(MlError::ArgumentOutOfRange(format!(
            "polynomial-source closed form requires 0 < alpha < 1, got {}",
            sys.alpha
        )));
    }
    if t < 0.0 {
        return Err(MlError::InvalidArgument("t must be nonnegative".into()));
    }
    if t == 0.0 {
        return Ok(sys.y0[0].clone());
    }
    let targ = t.powf(sys.alpha);
    let mut y = cache.apply(1.0, targ, &sys.y0[0])?;
    let mut lfact = 1.0f64;
    for (l, &cl) in coeffs.iter().enumerate() {
        if l > 0 {
            lfact *= l as f64;
        }
        if cl == 0.0 {
            continue;
        }
        let term = cache.apply(sys.alpha + l as f64 + 1.0, targ, &direction)?;
        y = y + term.map(|v| v * lfact * cl * t.powf(sys.alpha + l as f64));
    }
    Ok(y)
}

/// Moment integrals J_r(X) = ∫_0^X w^(α+r-1) E_{α,α}(w^α A) dw applied to a
/// vector, via J_r(X) = X^(α+r) Σ_{m=0}^r (-1)^m (r)_m E_{α,α+m+1}(X^α A).
fn moment_apply(cache: &MlSchurCache, alpha: f64, x: f64, r: usize, v: &Array1<f64>) -> Result<Array1<f64>> {
    if x == 0.0 {
        return Ok(Array1::zeros(v.len()));
    }
    let xa = x.powf(alpha);
    let mut acc: Array1<f64> = Array1::zeros(v.len());
    let mut falling = 1.0f64;
    for m in 0..=r {
        if m > 0 {
            falling *= (r - m + 1) as f64;
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let term = cache.apply(alpha + m as f64 + 1.0, xa, v)?;
        acc = acc + term.map(|w| w * sign * falling);
    }
    Ok(acc.map(|w| w * x.powf(alpha + r as f64)))
}

/// Variation-of-constants solution with a sampled smooth source:
/// U(t) = E_{α,1}(t^α A) U_0 + ∫_0^t (t-τ)^(α-1) E_{α,α}((t-τ)^α A) F(τ) dτ,
/// the convolution approximated by degree-2 product integration that treats
/// the weakly singular kernel exactly.
pub fn solve_sampled_source(sys: &LinearFdeSystem, t: f64, nodes: usize) -> Result<Array1<f64>> {
    let f = match &sys.forcing {
        Forcing::Sampled(f) => f.clone(),
        Forcing::Polynomial { coeffs, direction } => {
            let coeffs = coeffs.clone();
            let direction = direction.clone();
            Arc::new(move |t: f64| {
                let mut s = 0.0;
                for (l, &c) in coeffs.iter().enumerate() {
                    s += c * t.powi(l as i32);
                }
                direction.map(|&d| d * s)
            }) as Arc<dyn Fn(f64) -> Array1<f64> + Send + Sync>
        }
        Forcing::None => {
            return solve_linear_fde(
                &LinearFdeSystem { forcing: Forcing::None, ..sys.clone() },
                t,
            )
        }
    };
    if nodes < 2 {
        return Err(MlError::NodeBudget(nodes));
    }
    if t < 0.0 {
        return Err(MlError::InvalidArgument("t must be nonnegative".into()));
    }
    if t == 0.0 {
        return Ok(sys.y0[0].clone());
    }
    let cache = MlSchurCache::new(&sys.a, sys.alpha)?;
    let alpha = sys.alpha;
    let targ = t.powf(alpha);
    let mut y = cache.apply(1.0, targ, &sys.y0[0])?;
    if sys.y0.len() > 1 {
        for (l, y0l) in sys.y0.iter().enumerate().skip(1) {
            let term = cache.apply(l as f64 + 1.0, targ, y0l)?;
            y = y + term.map(|v| v * t.powi(l as i32));
        }
    }

    // Subintervals in τ; w = t - τ decreases from w_i to w_{i+1}.
    let hstep = t / nodes as f64;
    for i in 0..nodes {
        let tau0 = i as f64 * hstep;
        let tau1 = tau0 + hstep;
        let taum = 0.5 * (tau0 + tau1);
        let (wa, wb, wc) = (t - tau0, t - taum, t - tau1);
        let fa = f(tau0);
        let fb = f(taum);
        let fc = f(tau1);
        // Quadratic in w through (wa, fa), (wb, fb), (wc, fc):
        // monomial coefficients d0 + d1 w + d2 w².
        let dd1 = (&fb - &fa).map(|v| v / (wb - wa));
        let dd2_num = (&fc - &fb).map(|v| v / (wc - wb));
        let dd2 = (&dd2_num - &dd1).map(|v| v / (wc - wa));
        let d2 = dd2.clone();
        let d1 = &dd1 - &dd2.map(|v| v * (wa + wb));
        let d0 = &fa - &dd1.map(|v| v * wa) + &dd2.map(|v| v * wa * wb);
        for (r, d) in [d0, d1, d2].into_iter().enumerate() {
            if d.iter().all(|&v| v == 0.0) {
                continue;
            }
            let upper = moment_apply(&cache, alpha, wa, r, &d)?;
            let lower = moment_apply(&cache, alpha, wc, r, &d)?;
            y = y + upper - lower;
        }
    }
    Ok(y)
}
