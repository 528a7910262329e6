//! Triangular Sylvester solver for the block Parlett recurrence.

use crate::error::{MlError, Result};
use crate::linalg::CMat;
use ndarray::Array2;
use num_complex::Complex64;

/// Solve T_ii F - F T_jj = C with T_ii (m×m) and T_jj (p×p) upper
/// triangular, by columnwise back substitution. The spectra must be
/// separated (guaranteed by clustering).
pub fn sylvester_triangular(tii: &CMat, tjj: &CMat, c: &CMat) -> Result<CMat> {
    let m = tii.nrows();
    let p = tjj.nrows();
    if c.nrows() != m || c.ncols() != p {
        return Err(MlError::DimensionError(format!(
            "rhs is {}x{}, expected {}x{}",
            c.nrows(),
            c.ncols(),
            m,
            p
        )));
    }
    let mut f: CMat = Array2::from_elem((m, p), Complex64::new(0.0, 0.0));
    for l in 0..p {
        // rhs_l = C_l + Σ_{κ<l} F_κ (T_jj)_{κl}
        let mut rhs: Vec<Complex64> = (0..m).map(|r| c[[r, l]]).collect();
        for kappa in 0..l {
            let t = tjj[[kappa, l]];
            if t != Complex64::new(0.0, 0.0) {
                for r in 0..m {
                    rhs[r] += f[[r, kappa]] * t;
                }
            }
        }
        // (T_ii - (T_jj)_ll I) F_l = rhs, back substitution
        let shift = tjj[[l, l]];
        for r in (0..m).rev() {
            let mut s = rhs[r];
            for k in r + 1..m {
                s -= tii[[r, k]] * f[[k, l]];
            }
            let den = tii[[r, r]] - shift;
            let scale = tii[[r, r]].norm().max(shift.norm()).max(1.0);
            if den.norm() <= f64::EPSILON * scale {
                return Err(MlError::NearSingularSeparation(den.norm()));
            }
            f[[r, l]] = s / den;
        }
    }
    Ok(f)
}
