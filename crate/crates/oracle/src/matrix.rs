//! Matrix Taylor oracles: Σ A^j / Γ(αj+β) by compensated f64 summation or by
//! big-float summation with adaptive working precision.

use crate::bigc::BigComplex;
use num_complex::Complex64;
use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

const TERM_BUDGET: usize = 100_000;

pub type CMatrix = Vec<Vec<Complex64>>;

fn dims(a: &CMatrix) -> usize {
    let n = a.len();
    for row in a {
        assert_eq!(row.len(), n, "matrix oracle needs a square matrix");
    }
    n
}

fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for l in 0..n {
            let ail = a[i][l];
            if ail == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += ail * b[l][j];
            }
        }
    }
    out
}

fn fro(a: &CMatrix) -> f64 {
    a.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Compensated (Kahan) summation of the matrix series until the term norm
/// drops below 1e-20 of the partial-sum norm. Adequate when the powers do
/// not grow much beyond the sum (no strong cancellation).
pub fn matrix_taylor_compensated(a: &CMatrix, alpha: f64, beta: f64) -> CMatrix {
    let n = dims(a);
    let zero = Complex64::new(0.0, 0.0);
    let mut sum = vec![vec![zero; n]; n];
    let mut comp = vec![vec![zero; n]; n];
    let mut pw = vec![vec![zero; n]; n];
    for (i, row) in pw.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    let mut small = 0;
    for j in 0..TERM_BUDGET {
        let x = Float::with_val(128, alpha) * j as f64 + Float::with_val(128, beta);
        let rg = Float::with_val(128, 1.0 / x.gamma()).to_f64_round(Round::Nearest);
        let mut term_norm = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let term = pw[r][c] * rg;
                term_norm += term.norm_sqr();
                // Kahan step
                let y = term - comp[r][c];
                let t = sum[r][c] + y;
                comp[r][c] = (t - sum[r][c]) - y;
                sum[r][c] = t;
            }
        }
        if term_norm.sqrt() <= 1e-20 * fro(&sum).max(1e-300) {
            small += 1;
            if small >= 3 {
                return sum;
            }
        } else {
            small = 0;
        }
        pw = matmul(&pw, a);
    }
    panic!("term budget exceeded in compensated matrix Taylor oracle");
}

type BigMatrix = Vec<Vec<BigComplex>>;

fn big_matmul(a: &BigMatrix, b: &BigMatrix, prec: u32) -> BigMatrix {
    let n = a.len();
    let mut out = vec![vec![BigComplex::zero(prec); n]; n];
    for i in 0..n {
        for l in 0..n {
            for j in 0..n {
                out[i][j] = out[i][j].add(&a[i][l].mul(&b[l][j]));
            }
        }
    }
    out
}

fn big_fro(a: &BigMatrix, prec: u32) -> Float {
    let mut acc = Float::with_val(prec, 0.0);
    for row in a {
        for x in row {
            acc += Float::with_val(prec, x.re.clone().square() + x.im.clone().square());
        }
    }
    acc.sqrt()
}

fn run_big(a: &CMatrix, alpha: f64, beta: f64, prec: u32, digits: usize) -> Option<(BigMatrix, f64)> {
    let n = dims(a);
    let big_a: BigMatrix =
        a.iter().map(|row| row.iter().map(|x| BigComplex::from_f64(prec, x.re, x.im)).collect()).collect();
    let mut sum = vec![vec![BigComplex::zero(prec); n]; n];
    let mut pw = vec![vec![BigComplex::zero(prec); n]; n];
    for (i, row) in pw.iter_mut().enumerate() {
        row[i] = BigComplex::one(prec);
    }
    let stop = Float::with_val(prec, 10.0f64).pow(-(digits as i32 + 10));
    let stop = Float::with_val(prec, stop);
    let alpha_big = Float::with_val(prec, alpha);
    let beta_big = Float::with_val(prec, beta);
    let mut max_term = Float::with_val(prec, 0.0);
    let mut small = 0;
    for j in 0..TERM_BUDGET {
        let x = Float::with_val(prec, &alpha_big * &Float::with_val(prec, j)) + &beta_big;
        let g = Float::with_val(prec, x).gamma();
        let rg = Float::with_val(prec, 1.0 / g);
        let mut term_norm = Float::with_val(prec, 0.0);
        for r in 0..n {
            for c in 0..n {
                let term = pw[r][c].scale(&rg);
                term_norm += Float::with_val(prec, term.re.clone().square() + term.im.clone().square());
                sum[r][c] = sum[r][c].add(&term);
            }
        }
        let term_norm = term_norm.sqrt();
        if term_norm > max_term {
            max_term = term_norm.clone();
        }
        let scale = big_fro(&sum, prec).max(&Float::with_val(prec, 1.0));
        if term_norm < Float::with_val(prec, &stop * &scale) {
            small += 1;
            if small >= 3 {
                let sum_norm = big_fro(&sum, prec);
                let lost = if sum_norm == 0.0 {
                    0.0
                } else {
                    Float::with_val(prec, &max_term / &sum_norm).to_f64_round(Round::Nearest).log10().max(0.0)
                };
                return Some((sum, lost));
            }
        } else {
            small = 0;
        }
        pw = big_matmul(&pw, &big_a, prec);
    }
    None
}

/// Big-float matrix Taylor summation; raises the working precision until the
/// cancellation observed along the way leaves `digits` significant digits.
pub fn matrix_taylor_big(a: &CMatrix, alpha: f64, beta: f64, digits: usize) -> Vec<Vec<(Float, Float)>> {
    let mut work = digits + 15;
    loop {
        let prec = ((work as f64) * 3.3220) as u32 + 24;
        let (sum, lost) = run_big(a, alpha, beta, prec, digits).expect("term budget exceeded in matrix Taylor oracle");
        if (work as f64) - lost >= (digits + 8) as f64 {
            return sum.into_iter().map(|row| row.into_iter().map(|x| (x.re, x.im)).collect()).collect();
        }
        work = work + lost.ceil() as usize + 15;
        assert!(work < 2500, "runaway precision growth in matrix oracle");
    }
}

/// Big-float matrix Taylor rounded to f64 entries.
pub fn matrix_taylor_big_f64(a: &CMatrix, alpha: f64, beta: f64, digits: usize) -> CMatrix {
    matrix_taylor_big(a, alpha, beta, digits)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|(re, im)| Complex64::new(re.to_f64_round(Round::Nearest), im.to_f64_round(Round::Nearest)))
                .collect()
        })
        .collect()
}
