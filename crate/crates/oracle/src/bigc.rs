//! Minimal complex arithmetic over MPFR floats.

use rug::float::Round;
use rug::ops::Pow;
use rug::Float;

#[derive(Debug, Clone)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(Float::with_val(self.prec(), &self.re + &other.re), Float::with_val(self.prec(), &self.im + &other.im))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(Float::with_val(self.prec(), &self.re - &other.re), Float::with_val(self.prec(), &self.im - &other.im))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &other.re) - Float::with_val(p, &self.im * &other.im);
        let im = Float::with_val(p, &self.re * &other.im) + Float::with_val(p, &self.im * &other.re);
        Self::new(Float::with_val(p, re), Float::with_val(p, im))
    }

    pub fn scale(&self, s: &Float) -> Self {
        Self::new(Float::with_val(self.prec(), &self.re * s), Float::with_val(self.prec(), &self.im * s))
    }

    pub fn div(&self, other: &Self) -> Self {
        let p = self.prec();
        let den = Float::with_val(p, other.re.clone().square() + other.im.clone().square());
        let num = self.mul(&other.conj());
        Self::new(Float::with_val(p, &num.re / &den), Float::with_val(p, &num.im / &den))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), Float::with_val(self.prec(), -self.im.clone()))
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.clone().square() + self.im.clone().square()).sqrt()
    }

    /// Principal-branch natural power for positive real exponent applied to
    /// the polar form; used for z^t with t a big float.
    pub fn pow_real(&self, t: &Float) -> Self {
        let p = self.prec();
        let r = self.abs();
        let theta = Float::with_val(p, self.im.clone().atan2(&self.re));
        let ln_r = Float::with_val(p, r.ln());
        let mag = Float::with_val(p, Float::with_val(p, &ln_r * t).exp());
        let ang = Float::with_val(p, &theta * t);
        let (s, c) = ang.sin_cos(Float::new(p));
        Self::new(Float::with_val(p, &mag * &c), Float::with_val(p, &mag * &s))
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let mag = Float::with_val(p, self.re.clone().exp());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Self::new(Float::with_val(p, &mag * &c), Float::with_val(p, &mag * &s))
    }

    /// Round to an f64 pair.
    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64_round(Round::Nearest), self.im.to_f64_round(Round::Nearest))
    }
}

/// Decimal string with `digits` significant digits.
pub fn decimal_string(x: &Float, digits: usize) -> String {
    let (sign, mantissa, exp) = x.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
    let s = if sign { "-" } else { "" };
    match exp {
        Some(e) => format!("{s}0.{mantissa}e{e}"),
        None => "0.0e0".to_string(),
    }
}

pub fn parse_decimal(prec: u32, s: &str) -> Float {
    Float::with_val(prec, Float::parse(s).expect("invalid decimal fixture string"))
}

/// z^n by binary powering.
pub fn powi(z: &BigComplex, n: u64) -> BigComplex {
    let mut base = z.clone();
    let mut acc = BigComplex::one(z.prec());
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    acc
}

/// Γ(x) at the working precision (argument given as an exact f64).
pub fn gamma_big(prec: u32, x: f64) -> Float {
    Float::with_val(prec, x).gamma()
}

/// (x)_k falling factorial as a big float.
pub fn falling_big(prec: u32, x: f64, k: usize) -> Float {
    let mut acc = Float::with_val(prec, 1.0);
    for i in 0..k {
        acc *= Float::with_val(prec, x - i as f64);
    }
    acc
}

/// Exact power of ten as a big float.
pub fn pow10(prec: u32, e: i32) -> Float {
    Float::with_val(prec, 10.0).pow(e)
}
