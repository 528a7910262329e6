//! Small dense helpers on complex matrices.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

pub type CMat = Array2<Complex64>;
pub type CVec = Array1<Complex64>;

pub fn identity(n: usize) -> CMat {
    Array2::from_diag_elem(n, Complex64::new(1.0, 0.0))
}

pub fn fro_norm(a: &CMat) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn one_norm(a: &CMat) -> f64 {
    let mut best = 0.0f64;
    for j in 0..a.ncols() {
        let s: f64 = a.column(j).iter().map(|x| x.norm()).sum();
        best = best.max(s);
    }
    best
}

pub fn conj_transpose(a: &CMat) -> CMat {
    let mut out = Array2::zeros((a.ncols(), a.nrows()));
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            out[[j, i]] = a[[i, j]].conj();
        }
    }
    out
}

pub fn is_upper_triangular(a: &CMat) -> bool {
    let n = a.nrows();
    for i in 1..n {
        for j in 0..i {
            if a[[i, j]] != Complex64::new(0.0, 0.0) {
                return false;
            }
        }
    }
    true
}

pub fn is_diagonal(a: &CMat) -> bool {
    let n = a.nrows();
    for i in 0..n {
        for j in 0..n {
            if i != j && a[[i, j]] != Complex64::new(0.0, 0.0) {
                return false;
            }
        }
    }
    true
}

pub fn is_hermitian(a: &CMat, tol: f64) -> bool {
    let n = a.nrows();
    for i in 0..n {
        for j in i..n {
            if (a[[i, j]] - a[[j, i]].conj()).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// Max |imaginary part| over all entries.
pub fn max_imag(a: &CMat) -> f64 {
    a.iter().fold(0.0f64, |m, x| m.max(x.im.abs()))
}

pub fn real_part(a: &CMat) -> Array2<f64> {
    a.map(|x| x.re)
}

pub fn complexify(a: &Array2<f64>) -> CMat {
    a.map(|&x| Complex64::new(x, 0.0))
}

/// Solve the square complex system `a x = b` by LU with partial pivoting.
/// `a` is consumed as workspace.
pub fn lu_solve(mut a: CMat, mut b: CVec) -> Option<CVec> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n);
    assert_eq!(b.len(), n);
    for col in 0..n {
        let mut piv = col;
        let mut best = a[[col, col]].norm();
        for r in col + 1..n {
            let v = a[[r, col]].norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return None;
        }
        if piv != col {
            for j in 0..n {
                let t = a[[col, j]];
                a[[col, j]] = a[[piv, j]];
                a[[piv, j]] = t;
            }
            b.swap(col, piv);
        }
        let d = a[[col, col]];
        for r in col + 1..n {
            let f = a[[r, col]] / d;
            if f != Complex64::new(0.0, 0.0) {
                for j in col + 1..n {
                    let v = a[[col, j]];
                    a[[r, j]] -= f * v;
                }
                let bc = b[col];
                b[r] -= f * bc;
            }
            a[[r, col]] = Complex64::new(0.0, 0.0);
        }
    }
    for r in (0..n).rev() {
        let mut s = b[r];
        for j in r + 1..n {
            s -= a[[r, j]] * b[j];
        }
        b[r] = s / a[[r, r]];
    }
    Some(b)
}

/// Solve the square real system `a x = b` by LU with partial pivoting.
pub fn lu_solve_real(mut a: Array2<f64>, mut b: Array1<f64>) -> Option<Array1<f64>> {
    let n = a.nrows();
    for col in 0..n {
        let mut piv = col;
        let mut best = a[[col, col]].abs();
        for r in col + 1..n {
            if a[[r, col]].abs() > best {
                best = a[[r, col]].abs();
                piv = r;
            }
        }
        if best == 0.0 {
            return None;
        }
        if piv != col {
            for j in 0..n {
                a.swap([col, j], [piv, j]);
            }
            b.swap(col, piv);
        }
        let d = a[[col, col]];
        for r in col + 1..n {
            let f = a[[r, col]] / d;
            if f != 0.0 {
                for j in col + 1..n {
                    let v = a[[col, j]];
                    a[[r, j]] -= f * v;
                }
                let bc = b[col];
                b[r] -= f * bc;
            }
            a[[r, col]] = 0.0;
        }
    }
    for r in (0..n).rev() {
        let mut s = b[r];
        for j in r + 1..n {
            s -= a[[r, j]] * b[j];
        }
        b[r] = s / a[[r, r]];
    }
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn lu_solves_small_complex_system() {
        let a = array![
            [Complex64::new(2.0, 1.0), Complex64::new(0.0, -1.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.5)],
        ];
        let x_true = array![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.25)];
        let b = a.dot(&x_true);
        let x = lu_solve(a.clone(), b).unwrap();
        for i in 0..2 {
            assert!((x[i] - x_true[i]).norm() < 1e-14);
        }
    }

    #[test]
    fn lu_solves_real_system() {
        let a = array![[4.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 2.0]];
        let x_true = array![1.0, -2.0, 3.0];
        let b = a.dot(&x_true);
        let x = lu_solve_real(a, b).unwrap();
        for i in 0..3 {
            assert!((x[i] - x_true[i]).abs() < 1e-13);
        }
    }
}
