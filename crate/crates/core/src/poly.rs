//! Dense univariate polynomials, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Polynomial with coefficients `coeffs[j]` of `x^j`.
///
/// Trailing zeros are always stripped; the zero polynomial has no
/// coefficients and degree `-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `x^j`.
    pub fn monomial(j: usize) -> Self {
        let mut coeffs = vec![T::zero(); j + 1];
        coeffs[j] = T::one();
        Poly { coeffs }
    }

    /// `∏ (x - r)` over the given roots.
    pub fn from_roots<'a, I>(roots: I) -> Self
    where
        I: IntoIterator<Item = &'a T>,
    {
        let mut coeffs = vec![T::one()];
        for r in roots {
            // multiply in place by (x - r)
            coeffs.push(T::zero());
            for j in (0..coeffs.len()).rev() {
                let shifted = if j > 0 { coeffs[j - 1].clone() } else { T::zero() };
                coeffs[j] = shifted - r.clone() * coeffs[j].clone();
            }
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^j` (zero past the degree).
    pub fn coeff(&self, j: usize) -> T {
        self.coeffs.get(j).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Largest coefficient magnitude.
    pub fn norm_inf(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .fold(T::zero(), |m, c| if c > m { c } else { m })
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `d^n/dx^n`; zero once `n` exceeds the degree.
    pub fn derivative(&self, n: usize) -> Self {
        if n == 0 {
            return self.clone();
        }
        if n >= self.coeffs.len() {
            return Self::zero();
        }
        let coeffs = (n..self.coeffs.len())
            .map(|j| {
                // j (j-1) ... (j-n+1)
                let falling = ((j - n + 1)..=j).fold(1i64, |p, k| p * k as i64);
                self.coeffs[j].clone() * T::from_int(falling)
            })
            .collect();
        Self::new(coeffs)
    }

    /// Divides so that the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) if !l.is_one() => {
                let inv = T::one() / l.clone();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.lead().ok_or(Error::DivisionByZero)?.clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / dl.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
                }
            }
            // leading term is eliminated by construction; avoid float residue
            rem[k + dd] = T::zero();
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    ///
    /// Only defined over exact scalars.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if !T::EXACT {
            return Err(Error::InexactGcd);
        }
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            // keeping remainders monic curbs coefficient growth
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// Exact quotient; errors unless `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Arity(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    /// Whether every coefficient of `self - other` is negligible relative
    /// to the larger of the two norms (exact equality in exact mode).
    pub fn approx_eq(&self, other: &Self) -> bool {
        let diff = self - other;
        let scale = {
            let (a, b) = (self.norm_inf(), other.norm_inf());
            if a > b { a } else { b }
        };
        diff.coeffs.iter().all(|c| T::is_negligible(c, &scale))
    }
}

impl<T: Scalar> Default for Poly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> From<T> for Poly<T> {
    fn from(c: T) -> Self {
        Self::constant(c)
    }
}

impl<'a, T: Scalar> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &'a Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl<'a, T: Scalar> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &'a Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl<'a, T: Scalar> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &'a Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $f(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Scalar> std::iter::Sum for Poly<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |a, b| &a + &b)
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{j}")?,
                (_, false) => write!(f, "{mag}*x^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use num_traits::{One, Zero};

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&v| Q::from_int(v)).collect())
    }

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn cancellation_strips_to_constant() {
        assert_eq!(&p(&[1, 1]) + &p(&[1, -1]), p(&[2]));
        assert_eq!((&p(&[1, 1]) - &p(&[1, 1])).degree(), -1);
    }

    #[test]
    fn expansion() {
        assert_eq!(&p(&[-1, 1]) * &p(&[-2, 1]), p(&[2, -3, 1]));
        assert_eq!(Poly::from_roots(&[q(1, 1), q(2, 1)]), p(&[2, -3, 1]));
        assert_eq!(Poly::<Q>::from_roots(&[]), Poly::one());
    }

    #[test]
    fn derivatives() {
        let quad = p(&[2, -3, 1]);
        assert_eq!(quad.derivative(1), p(&[-3, 2]));
        let half = Poly::new(vec![Q::zero(), q(-1, 2), q(1, 2)]); // x(x-1)/2
        assert_eq!(half.derivative(2), Poly::one());
        assert!(quad.derivative(3).is_zero());
        assert_eq!(quad.derivative(0), quad);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[3, 1])).unwrap(), Poly::one());
        let a = p(&[4, 0, 2]);
        assert_eq!(a.gcd(&Poly::zero()).unwrap(), p(&[2, 0, 1]));
        assert_eq!(Poly::<Q>::zero().gcd(&Poly::zero()), Err(Error::ZeroGcd));
        let f = Poly::<f64>::new(vec![1.0, 1.0]);
        assert_eq!(f.gcd(&f), Err(Error::InexactGcd));
    }

    #[test]
    fn eval_roots() {
        assert!(p(&[2, -3, 1]).eval(&Q::one()).is_zero());
        let r = Poly::new(vec![q(-1, 2), Q::one()]); // (2x-1)/2
        assert!(r.eval(&q(1, 2)).is_zero());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[5, -2, 0, 3, 1]);
        let d = p(&[1, 2, 3]);
        let (qq, r) = a.div_rem(&d).unwrap();
        assert!(r.degree() < d.degree());
        assert_eq!(&(&qq * &d) + &r, a);
        assert_eq!(a.div_rem(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, -3, 1]).to_string(), "2 - 3*x + x^2");
        assert_eq!(Poly::new(vec![Q::zero(), q(-1, 6)]).to_string(), "-1/6*x");
        assert_eq!(Poly::<Q>::zero().to_string(), "0");
    }
}
