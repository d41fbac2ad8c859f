//! Scalar fields the weight-functions are computed over.
//!
//! Exact work uses [`BigRational`]; `f64` and `f32` give the float mode.
//! A computation is monomorphised over one scalar type, so exact and float
//! values can never meet in the same operation.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Field of coefficients and node coordinates.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    /// `true` for arbitrary-precision rationals.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    /// `num / den`; panics when `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }

    fn as_f64(&self) -> f64;

    /// Nearest value to `v` (exact for rationals; `v` must be finite).
    fn from_f64(v: f64) -> Self;

    /// Whether `value` counts as zero for a quantity of magnitude `scale`.
    ///
    /// Exact: literally zero. Float: `|value| < tol * (1 + scale)`.
    fn is_negligible(value: &Self, scale: &Self) -> bool;

    /// Parses `"p/q"`, an integer, or a plain decimal such as `"-0.125"`.
    fn parse_str(s: &str) -> Result<Self>;

    /// Canonical JSON form: reduced `"p/q"` strings for rationals,
    /// shortest round-trip numbers for floats.
    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Self::parse_str(s),
            Value::Number(n) => Self::parse_str(&n.to_string()),
            other => Err(Error::Parse(format!("expected number or string, got {other}"))),
        }
    }
}

/// Which scalar field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // numerator or denominator beyond f64 range
            let n = self.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite float")
    }

    fn is_negligible(value: &Self, _scale: &Self) -> bool {
        value.is_zero()
    }

    fn parse_str(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_int(v: i64) -> Self {
                v as $t
            }

            fn as_f64(&self) -> f64 {
                *self as f64
            }

            fn from_f64(v: f64) -> Self {
                v as $t
            }

            fn is_negligible(value: &Self, scale: &Self) -> bool {
                value.abs() < $tol * (1.0 + scale.abs())
            }

            fn parse_str(s: &str) -> Result<Self> {
                let s = s.trim();
                if s.contains('/') {
                    let q = parse_rational(s)?;
                    return Ok(Scalar::as_f64(&q) as $t);
                }
                s.parse::<$t>()
                    .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
            }

            fn to_json(&self) -> Value {
                // Display is the shortest round-trip form of the narrow type
                self.to_string()
                    .parse::<f64>()
                    .ok()
                    .and_then(serde_json::Number::from_f64)
                    .map(Value::Number)
                    .unwrap_or(Value::Null)
            }
        }
    };
}

float_scalar!(f64, 1e-12);
float_scalar!(f32, 1e-5);

/// Exact parse of `"p/q"`, `"p"`, or a decimal with optional exponent.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }

    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// `(-1)^k` in any scalar field.
pub fn sign_power<T: Scalar>(k: usize) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("2.5e-1").unwrap(), q(1, 4));
        assert_eq!(parse_rational("3e2").unwrap(), q(300, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "abc", "1.2.3", "-", "1/x"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn json_forms() {
        assert_eq!(q(-1, 3).to_json(), Value::String("-1/3".into()));
        assert_eq!(q(4, 2).to_json(), Value::String("2".into()));
        assert_eq!(0.1f64.to_json().to_string(), "0.1");
        let v: Value = serde_json::from_str("0.1").unwrap();
        assert_eq!(BigRational::from_json(&v).unwrap(), q(1, 10));
        assert_eq!(f64::from_json(&Value::String("1/4".into())).unwrap(), 0.25);
    }

    #[test]
    fn negligible_is_scale_aware_in_float_mode() {
        assert!(f64::is_negligible(&1e-13, &0.0));
        assert!(!f64::is_negligible(&1e-11, &0.0));
        assert!(f64::is_negligible(&1e-9, &1e4));
        assert!(!BigRational::is_negligible(&q(1, 1_000_000_000_000), &q(0, 1)));
    }
}
