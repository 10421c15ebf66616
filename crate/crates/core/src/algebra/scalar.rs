//! Coefficient fields: exact complex rationals and IEEE `Complex64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::{Error, Result};

/// Arithmetic mode of a coefficient type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

/// Tolerance on `|omega| = 1` in float mode.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// The scalar field a group-ring vector is defined over.
///
/// Both implementations are fields: every nonzero element has an inverse.
/// Mixing modes is ruled out by the type system.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + 'static
{
    const MODE: Mode;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn inverse(&self) -> Option<Self>;

    fn conj(&self) -> Self;

    fn to_c64(&self) -> Complex64;

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }

    /// How `|self|` compares with 1: exactly in exact mode, up to
    /// [`UNIT_TOLERANCE`] in float mode.
    fn cmp_modulus_one(&self) -> Ordering;

    /// `self^k`; panics for negative `k` on zero.
    fn powi(&self, k: i64) -> Self {
        let base = if k < 0 {
            self.inverse().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        acc
    }

    /// `self^k` for `|self| = 1`. Float mode avoids accumulating rounding by
    /// going through the argument.
    fn unit_powi(&self, k: i64) -> Self {
        self.powi(k)
    }

    /// `[self^0, self^1, …, self^(count-1)]` for `|self| = 1`.
    fn unit_powers(&self, count: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(count);
        let mut acc = Self::one();
        for _ in 0..count {
            out.push(acc.clone());
            acc = acc * self.clone();
        }
        out
    }

    /// Parses a real and imaginary part given as strings.
    fn parse_parts(re: &str, im: &str) -> Result<Self>;

    /// Real and imaginary parts as JSON values.
    fn to_json_parts(&self) -> (serde_json::Value, serde_json::Value);
}

/// Exact complex rational `re + i im`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exact {
    pub re: Rational,
    pub im: Rational,
}

impl Exact {
    pub fn new(re: Rational, im: Rational) -> Self {
        Exact { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Exact {
            re,
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        Exact {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn norm_sqr(&self) -> Rational {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({} + {}i)", self.re, self.im)
        }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for Exact {
    type Output = Exact;

    fn add(self, rhs: Exact) -> Exact {
        Exact {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for Exact {
    type Output = Exact;

    fn sub(self, rhs: Exact) -> Exact {
        Exact {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for Exact {
    type Output = Exact;

    fn mul(self, rhs: Exact) -> Exact {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Exact::real(self.re * rhs.re);
        }
        Exact {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for Exact {
    type Output = Exact;

    fn neg(self) -> Exact {
        Exact {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Zero for Exact {
    fn zero() -> Self {
        Exact::real(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Exact {
    fn one() -> Self {
        Exact::real(Rational::one())
    }
}

impl Coefficient for Exact {
    const MODE: Mode = Mode::Exact;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Exact::real(Rational::new(numer, denom))
    }

    fn inverse(&self) -> Option<Self> {
        if self.im.is_zero() {
            return self.re.recip().map(Exact::real);
        }
        let n = self.norm_sqr().recip()?;
        Some(Exact {
            re: self.re.clone() * n.clone(),
            im: -(self.im.clone() * n),
        })
    }

    fn conj(&self) -> Self {
        Exact {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn cmp_modulus_one(&self) -> Ordering {
        self.norm_sqr().cmp(&Rational::one())
    }

    fn parse_parts(re: &str, im: &str) -> Result<Self> {
        Ok(Exact {
            re: re.parse()?,
            im: im.parse()?,
        })
    }

    fn to_json_parts(&self) -> (serde_json::Value, serde_json::Value) {
        (self.re.to_string().into(), self.im.to_string().into())
    }
}

impl Coefficient for Complex64 {
    const MODE: Mode = Mode::Float;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Complex64::new(numer as f64 / denom as f64, 0.0)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn cmp_modulus_one(&self) -> Ordering {
        let m = self.norm();
        if (m - 1.0).abs() <= UNIT_TOLERANCE {
            Ordering::Equal
        } else {
            m.partial_cmp(&1.0).unwrap_or(Ordering::Greater)
        }
    }

    fn unit_powi(&self, k: i64) -> Self {
        // the four real/imaginary units stay exact
        let quarter = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ];
        if let Some(pos) = quarter.iter().position(|q| q == self) {
            return quarter[((pos as i64 * k).rem_euclid(4)) as usize];
        }
        Complex64::from_polar(1.0, self.arg() * k as f64)
    }

    fn unit_powers(&self, count: usize) -> Vec<Self> {
        (0..count as i64).map(|k| self.unit_powi(k)).collect()
    }

    fn parse_parts(re: &str, im: &str) -> Result<Self> {
        let parse = |s: &str| -> Result<f64> {
            let s = s.trim();
            if let Ok(x) = s.parse::<f64>() {
                return Ok(x);
            }
            s.parse::<Rational>().map(|r| r.to_f64())
        };
        Ok(Complex64::new(parse(re)?, parse(im)?))
    }

    fn to_json_parts(&self) -> (serde_json::Value, serde_json::Value) {
        (self.re.into(), self.im.into())
    }
}

/// A scalar whose mode is only known at run time (CLI input).
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Exact),
    Float(Complex64),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    /// Parses `1`, `-1`, `i`, `-i`, a real literal, or `re,im`.
    pub fn parse(s: &str, mode: Mode) -> Result<Self> {
        let t = s.trim();
        let (re, im) = match t {
            "i" | "+i" => ("0", "1"),
            "-i" => ("0", "-1"),
            _ => t.split_once(',').unwrap_or((t, "0")),
        };
        Ok(match mode {
            Mode::Exact => Scalar::Exact(Exact::parse_parts(re, im)?),
            Mode::Float => Scalar::Float(Complex64::parse_parts(re, im)?),
        })
    }

    pub fn exact(&self) -> Result<&Exact> {
        match self {
            Scalar::Exact(x) => Ok(x),
            Scalar::Float(_) => Err(Error::ModeMismatch),
        }
    }

    pub fn float(&self) -> Result<Complex64> {
        match self {
            Scalar::Float(x) => Ok(*x),
            Scalar::Exact(_) => Err(Error::ModeMismatch),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.clone() + b.clone())),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a + b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.clone() * b.clone())),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a * b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(x) => x.to_c64(),
            Scalar::Float(x) => *x,
        }
    }
}
