//! Exact rationals that stay in machine words until they overflow.
//!
//! Most coefficients met in practice (`1/n`, `-(n-k)/n`, powers of `1/2`)
//! fit in `Ratio<i64>`; only when a checked operation overflows does the value
//! move to a boxed `BigRational`. Values are kept canonical: a `Big` never
//! holds something representable as `Small`, so derived equality is exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        if numer == i64::MIN || denom == i64::MIN {
            return Self::from_big(BigRational::new(numer.into(), denom.into()));
        }
        Rational::Small(Ratio::new(numer, denom))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(n, 1)
    }

    fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => {
                Rational::Small(Ratio::new_raw(n, d))
            }
            _ => Rational::Big(Box::new(b)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => {
                BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
            }
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_negative(),
            Rational::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(r) if *r.numer() != i64::MIN => Rational::Small(r.recip()),
            _ => Self::from_big(self.to_big().recip()),
        })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rational::Small(r) => r.to_f64().unwrap_or(f64::NAN),
            Rational::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn is_small(&self) -> bool {
        matches!(self, Rational::Small(_))
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::Small(Ratio::zero())
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(r) if r.is_zero())
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::Small(Ratio::one())
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Rational {
            type Output = Rational;

            fn $method(self, rhs: Rational) -> Rational {
                if let (Rational::Small(a), Rational::Small(b)) = (&self, &rhs) {
                    if let Some(c) = a.$checked(b) {
                        if *c.numer() != i64::MIN && *c.denom() != i64::MIN {
                            return Rational::Small(c);
                        }
                    }
                }
                Rational::from_big(self.to_big().$method(rhs.to_big()))
            }
        }

        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;

            fn $method(self, rhs: &'a Rational) -> Rational {
                self.clone().$method(rhs.clone())
            }
        }
    };
}

checked_binop!(Add, add, checked_add);
checked_binop!(Sub, sub, checked_sub);
checked_binop!(Mul, mul, checked_mul);

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        match self {
            Rational::Small(r) => Rational::Small(-r),
            Rational::Big(b) => Rational::from_big(-*b),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(r) => write!(f, "{r}"),
            Rational::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `n`, `n/d` and plain decimals such as `-0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::parse(0, format!("invalid rational '{s}': {msg}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad("numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            return Ok(Self::from_big(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("fraction digits"));
            }
            let negative = int.trim_start().starts_with('-');
            let int: BigInt = match int.trim() {
                "" | "-" | "+" => BigInt::zero(),
                t => t.parse().map_err(|_| bad("integer part"))?,
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let frac: BigInt = frac.parse().map_err(|_| bad("fraction digits"))?;
            let magnitude = int.abs() * &scale + frac;
            let numer = if negative { -magnitude } else { magnitude };
            return Ok(Self::from_big(BigRational::new(numer, scale)));
        }
        let n: BigInt = s.parse().map_err(|_| bad("integer"))?;
        Ok(Self::from_big(BigRational::from_integer(n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let x = Rational::from_integer(i64::MAX);
        let y = x.clone() + Rational::one();
        assert!(!y.is_small());
        let z = y - Rational::one();
        assert!(z.is_small());
        assert_eq!(z, x);
        let tiny = Rational::new(1, 1 << 40);
        let tinier = tiny.clone() * tiny.clone();
        assert!(!tinier.is_small());
        assert_eq!(tinier.to_f64(), 2f64.powi(-80));
    }

    #[test]
    fn parsing() {
        assert_eq!("3/5".parse::<Rational>().unwrap(), Rational::new(3, 5));
        assert_eq!("-6/8".parse::<Rational>().unwrap(), Rational::new(-3, 4));
        assert_eq!("-0.25".parse::<Rational>().unwrap(), Rational::new(-1, 4));
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from_integer(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!(Rational::new(-3, 4).to_string(), "-3/4");
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(
            a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX,
        ) {
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            let (bx, by) = (big(a, b), big(c, d));
            prop_assert_eq!((x.clone() + y.clone()).to_big(), &bx + &by);
            prop_assert_eq!((x.clone() - y.clone()).to_big(), &bx - &by);
            prop_assert_eq!((x.clone() * y.clone()).to_big(), &bx * &by);
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            prop_assert_eq!((-x.clone()).to_big(), -bx.clone());
            if !x.is_zero() {
                prop_assert_eq!(x.recip().unwrap().to_big(), bx.recip());
            }
        }
    }
}
