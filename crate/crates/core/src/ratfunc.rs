//! Rational functions `num / den` over a [`Scalar`] field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Quotient of two polynomials with a monic denominator.
///
/// In exact mode `gcd(num, den) = 1` after every constructor and
/// operation. Float mode only normalises the denominator's leading
/// coefficient; cancelling common factors numerically is ill-posed.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<T> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Scalar> RatFunc<T> {
    /// Reduced `num / den`.
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        Ok(Self::raw(num, den)?.reduce())
    }

    /// `num / den` without cancelling common factors.
    pub fn raw(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly<T> {
        &self.num
    }

    pub fn den(&self) -> &Poly<T> {
        &self.den
    }

    /// Cancels `gcd(num, den)` (exact mode) and makes the denominator monic.
    pub fn reduce(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = (self.num.clone(), self.den.clone());
        if T::EXACT && !den.is_constant() {
            let g = num.gcd(&den).expect("exact gcd of nonzero operands");
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let lead = den.lead().cloned().expect("denominator is nonzero");
        if !lead.is_one() {
            let inv = T::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if its denominator is constant.
    pub fn as_poly(&self) -> Option<Poly<T>> {
        if self.den.is_constant() {
            let c = self.den.coeff(0);
            Some(self.num.scale(&(T::one() / c)))
        } else {
            None
        }
    }

    /// Evaluates at `x`; [`Error::Pole`] when the denominator vanishes there
    /// (or falls below the float-mode threshold).
    pub fn eval(&self, x: &T) -> Result<T> {
        let d = self.den.eval(x);
        if T::is_negligible(&d, &self.den.norm_inf()) {
            return Err(Error::Pole { at: x.to_string() });
        }
        Ok(self.num.eval(x) / d)
    }

    fn combine(num: Poly<T>, den: Poly<T>) -> Self {
        let r = RatFunc { num, den };
        r.reduce()
    }
}

impl<'a, T: Scalar> Add<&'a RatFunc<T>> for &'a RatFunc<T> {
    type Output = RatFunc<T>;

    fn add(self, rhs: &'a RatFunc<T>) -> RatFunc<T> {
        if self.den == rhs.den {
            return RatFunc::combine(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::combine(num, &self.den * &rhs.den)
    }
}

impl<'a, T: Scalar> Sub<&'a RatFunc<T>> for &'a RatFunc<T> {
    type Output = RatFunc<T>;

    fn sub(self, rhs: &'a RatFunc<T>) -> RatFunc<T> {
        self + &(-rhs)
    }
}

impl<'a, T: Scalar> Mul<&'a RatFunc<T>> for &'a RatFunc<T> {
    type Output = RatFunc<T>;

    fn mul(self, rhs: &'a RatFunc<T>) -> RatFunc<T> {
        RatFunc::combine(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Scalar> Neg for &RatFunc<T> {
    type Output = RatFunc<T>;

    fn neg(self) -> RatFunc<T> {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl<T: Scalar> From<Poly<T>> for RatFunc<T> {
    fn from(p: Poly<T>) -> Self {
        Self::from_poly(p)
    }
}

impl<T: Scalar> fmt::Display for RatFunc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&v| Q::from_int(v)).collect())
    }

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn common_denominator_cancels() {
        let a = RatFunc::new(p(&[1]), p(&[-1, 1])).unwrap();
        let b = RatFunc::new(p(&[-2, 1]), p(&[-1, 1])).unwrap();
        // 1/(x-1) + (x-2)/(x-1) = 1
        assert_eq!(&a + &b, RatFunc::one());
    }

    #[test]
    fn reciprocal_product() {
        let a = RatFunc::new(p(&[-1, 1]), p(&[2])).unwrap();
        let b = RatFunc::new(p(&[2]), p(&[-1, 1])).unwrap();
        assert_eq!(&a * &b, RatFunc::one());
    }

    #[test]
    fn additive_identity() {
        let a = RatFunc::new(p(&[3, 0, 1]), p(&[1, 5])).unwrap();
        assert_eq!(&a + &RatFunc::zero(), a);
    }

    #[test]
    fn reduction_makes_denominator_monic() {
        let r = RatFunc::new(p(&[-2, 0, 2]), p(&[-3, 3])).unwrap(); // 2(x^2-1) / 3(x-1)
        assert_eq!(r.num(), &Poly::new(vec![q(2, 3), q(2, 3)]));
        assert_eq!(r.den(), &Poly::one());
        assert_eq!(r.as_poly().unwrap(), Poly::new(vec![q(2, 3), q(2, 3)]));
    }

    #[test]
    fn pole_detection() {
        let r = RatFunc::new(p(&[1]), p(&[-1, 1])).unwrap();
        assert!(matches!(r.eval(&Q::from_int(1)), Err(Error::Pole { .. })));
        assert_eq!(r.eval(&Q::from_int(3)).unwrap(), q(1, 2));

        let f = RatFunc::<f64>::new(Poly::one(), Poly::new(vec![-1.0, 1.0])).unwrap();
        assert!(f.eval(&(1.0 + 1e-14)).is_err());
        assert!(f.eval(&1.5).is_ok());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFunc::new(p(&[1]), Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn float_mode_keeps_common_factors() {
        let r = RatFunc::<f64>::new(Poly::new(vec![-2.0, 2.0]), Poly::new(vec![-2.0, 2.0])).unwrap();
        assert_eq!(r.den().degree(), 1);
        assert_eq!(r.eval(&3.0).unwrap(), 1.0);
    }
}
