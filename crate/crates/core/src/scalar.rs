//! Scalar fields used throughout the crate.
//!
//! Every identity check runs over [`Rational`] (arbitrary precision, lossless).
//! `f64` is only used where irrational quantities enter (cosines in the
//! dihedral random scan) and for the asymptotic bound formulas.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational number of unbounded precision.
pub type Rational = BigRational;

/// Field operations needed by the Hecke, chain and spectral code.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn as_f64(&self) -> f64;

    fn abs_value(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Integer power; negative exponents invert.
    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// True when the value is exactly representable (not a float).
    fn is_exact() -> bool;
}

impl Scalar for Rational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn as_f64(&self) -> f64 {
        // Large numerators and denominators overflow a plain division.
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                let shift = self.denom().bits().max(self.numer().bits()) as i64 - 900;
                let scaled_num = self.numer() >> (shift.max(0) as usize);
                let scaled_den = self.denom() >> (shift.max(0) as usize);
                scaled_num.to_f64().unwrap_or(f64::NAN) / scaled_den.to_f64().unwrap_or(f64::NAN)
            }
        }
    }

    fn abs_value(&self) -> Self {
        Signed::abs(self)
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn abs_value(&self) -> Self {
        f64::abs(*self)
    }

    fn powi(&self, exp: i64) -> Self {
        f64::powi(*self, exp as i32)
    }

    fn is_exact() -> bool {
        false
    }
}

/// Parse `"p/q"`, `"p"` or a terminating decimal such as `"0.9"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let value = BigRational::new(num, den);
        return Ok(if negative { -value } else { value });
    }
    BigInt::from_str(text).map(BigRational::from_integer).map_err(|_| bad())
}

/// Canonical `"p/q"` rendering; integers render as `"p/1"` so every value has one shape.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// q = 1/θ with the range check 0 < θ ≤ 1.
pub fn deformation<S: Scalar>(theta: &S) -> Result<S, Error> {
    check_theta(theta)?;
    Ok(S::one() / theta.clone())
}

pub fn check_theta<S: Scalar>(theta: &S) -> Result<(), Error> {
    if *theta <= S::zero() || *theta > S::one() {
        return Err(Error::ThetaOutOfRange(theta.as_f64()));
    }
    Ok(())
}

/// The q-integer `[k]_q = 1 + q + ... + q^{k-1}`, valid at q = 1.
pub fn q_integer<S: Scalar>(k: u64, q: &S) -> S {
    let mut acc = S::zero();
    let mut power = S::one();
    for _ in 0..k {
        acc = acc + power.clone();
        power = power * q.clone();
    }
    acc
}

/// `[k]_q! = [1]_q [2]_q ... [k]_q`.
pub fn q_factorial<S: Scalar>(k: u64, q: &S) -> S {
    (1..=k).fold(S::one(), |acc, j| acc * q_integer(j, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("1/2").unwrap(), r(1, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), r(3, 1));
        assert_eq!(parse_rational("0.9").unwrap(), r(9, 10));
        assert_eq!(parse_rational("-1.25").unwrap(), r(-5, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn formats_as_p_over_q() {
        assert_eq!(format_rational(&r(6, 4)), "3/2");
        assert_eq!(format_rational(&r(5, 1)), "5/1");
    }

    #[test]
    fn powi_handles_negative_exponents() {
        assert_eq!(r(2, 3).powi(-2), r(9, 4));
        assert_eq!(r(2, 3).powi(0), r(1, 1));
        assert_eq!(2.0f64.powi(-1), 0.5);
    }

    #[test]
    fn q_integers_at_one_and_two() {
        assert_eq!(q_integer(4, &r(1, 1)), r(4, 1));
        assert_eq!(q_integer(3, &r(2, 1)), r(7, 1));
        assert_eq!(q_factorial(3, &r(2, 1)), r(21, 1));
    }

    #[test]
    fn theta_range() {
        assert!(check_theta(&r(1, 1)).is_ok());
        assert!(check_theta(&r(0, 1)).is_err());
        assert!(check_theta(&r(3, 2)).is_err());
        assert_eq!(deformation(&r(1, 3)).unwrap(), r(3, 1));
    }

    #[test]
    fn huge_rationals_convert_to_f64() {
        let big = r(1, 3) + r(1, 3).powi(1000);
        assert!((big.as_f64() - 1.0 / 3.0).abs() < 1e-15);
        assert!((r(2, 1).powi(1500) / r(3, 1).powi(900)).as_f64().is_finite());
    }
}
