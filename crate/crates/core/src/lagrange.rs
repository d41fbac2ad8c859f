//! Lagrange fundamental polynomials, interpolants and their derivatives.

use std::collections::HashMap;

use crate::error::{range_err, Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::stencil::Stencil;

/// Samples `f_{i+ℓ} = f(x_{i+ℓ})` keyed by stencil offset.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction<T> {
    first: i64,
    values: Vec<T>,
}

impl<T: Scalar> SampledFunction<T> {
    /// Values for the consecutive offsets `first, first + 1, …`.
    pub fn from_values(first: i64, values: Vec<T>) -> Self {
        SampledFunction { first, values }
    }

    /// Samples `f` at every node of `s`.
    pub fn sample(s: &Stencil<T>, f: impl Fn(&T) -> T) -> Self {
        SampledFunction {
            first: -s.m_minus(),
            values: s.nodes().iter().map(f).collect(),
        }
    }

    /// Kronecker samples: one at offset `ell`, zero elsewhere on `s`.
    pub fn kronecker(s: &Stencil<T>, ell: i64) -> Self {
        SampledFunction {
            first: -s.m_minus(),
            values: s.offsets().map(|l| if l == ell { T::one() } else { T::zero() }).collect(),
        }
    }

    pub fn get(&self, ell: i64) -> Option<&T> {
        let idx = ell - self.first;
        if idx < 0 {
            return None;
        }
        self.values.get(idx as usize)
    }

    fn require(&self, ell: i64) -> Result<&T> {
        self.get(ell)
            .ok_or_else(|| Error::Arity(format!("no sample at offset {ell}")))
    }

    /// `a f + b g`, defined on the common offsets.
    pub fn combine(&self, a: &T, other: &Self, b: &T) -> Self {
        let first = self.first.max(other.first);
        let end = (self.first + self.values.len() as i64).min(other.first + other.values.len() as i64);
        let values = (first..end)
            .map(|l| a.clone() * self.get(l).unwrap().clone() + b.clone() * other.get(l).unwrap().clone())
            .collect();
        SampledFunction { first, values }
    }
}

/// `α_{i+ℓ}(x) = ∏_{k≠ℓ} (x - x_{i+k}) / (x_{i+ℓ} - x_{i+k})`.
pub fn fundamental<T: Scalar>(s: &Stencil<T>, ell: i64) -> Result<Poly<T>> {
    let Some(xl) = s.get(ell) else {
        return range_err(format!("offset {ell} outside stencil {:?}", s.offsets()));
    };
    let others: Vec<&T> = s.offsets().filter(|&k| k != ell).map(|k| s.node(k)).collect();
    let denom = others
        .iter()
        .fold(T::one(), |acc, &xk| acc * (xl.clone() - xk.clone()));
    Ok(Poly::from_roots(others).scale(&(T::one() / denom)))
}

/// `α^{(n)}_{i+ℓ}(x)` without expanding the fundamental polynomial.
///
/// Builds the Taylor coefficients of `∏_{k≠ℓ} ((x - x_{i+k}) + t)` up to
/// `t^n`. Returns the value together with the same sum taken over
/// absolute values, a bound on the rounding-error scale in float mode.
pub fn fundamental_derivative_at<T: Scalar>(s: &Stencil<T>, ell: i64, n: usize, x: &T) -> Result<(T, T)> {
    let Some(xl) = s.get(ell) else {
        return range_err(format!("offset {ell} outside stencil {:?}", s.offsets()));
    };
    let mut taylor = vec![T::one()];
    let mut magnitude = vec![T::one()];
    let mut denom = T::one();
    for k in s.offsets().filter(|&k| k != ell) {
        let xk = s.node(k);
        let d = x.clone() - xk.clone();
        let len = (taylor.len() + 1).min(n + 1);
        taylor.resize(len, T::zero());
        magnitude.resize(len, T::zero());
        for j in (0..len).rev() {
            let below = if j > 0 { taylor[j - 1].clone() } else { T::zero() };
            let below_abs = if j > 0 { magnitude[j - 1].clone() } else { T::zero() };
            taylor[j] = taylor[j].clone() * d.clone() + below;
            magnitude[j] = magnitude[j].clone() * d.abs() + below_abs;
        }
        denom = denom * (xl.clone() - xk.clone());
    }
    if taylor.len() <= n {
        return Ok((T::zero(), T::zero()));
    }
    let factorial = (1..=n as i64).fold(T::one(), |acc, j| acc * T::from_int(j));
    let scale = factorial / denom;
    Ok((taylor[n].clone() * scale.clone(), magnitude[n].clone() * scale.abs()))
}

/// `p(x; f) = Σ_ℓ α_{i+ℓ}(x) f_{i+ℓ}`.
pub fn interpolate<T: Scalar>(s: &Stencil<T>, f: &SampledFunction<T>) -> Result<Poly<T>> {
    interp_derivative(s, f, 0)
}

/// `p^{(n)}(x; f) = Σ_ℓ α^{(n)}_{i+ℓ}(x) f_{i+ℓ}`.
pub fn interp_derivative<T: Scalar>(s: &Stencil<T>, f: &SampledFunction<T>, n: usize) -> Result<Poly<T>> {
    let mut acc = Poly::zero();
    for ell in s.offsets() {
        let fl = f.require(ell)?;
        if fl.is_zero() {
            continue;
        }
        acc = &acc + &fundamental(s, ell)?.derivative(n).scale(fl);
    }
    Ok(acc)
}

/// Neville's tableau evaluated at a single point.
pub fn neville_eval<T: Scalar>(s: &Stencil<T>, f: &SampledFunction<T>, x: &T) -> Result<T> {
    let xs = s.nodes();
    let mut col: Vec<T> = s.offsets().map(|l| f.require(l).cloned()).collect::<Result<_>>()?;
    for width in 1..xs.len() {
        for j in 0..xs.len() - width {
            let (xj, xk) = (&xs[j], &xs[j + width]);
            col[j] = ((x.clone() - xj.clone()) * col[j + 1].clone()
                - (x.clone() - xk.clone()) * col[j].clone())
                / (xk.clone() - xj.clone());
        }
    }
    Ok(col.swap_remove(0))
}

/// Memo of `α^{(n)}` for sub-windows of one stencil, confined to one
/// computation.
#[derive(Debug)]
pub struct FundamentalCache<T> {
    entries: HashMap<(i64, i64, i64, usize), Poly<T>>,
}

impl<T: Scalar> Default for FundamentalCache<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> FundamentalCache<T> {
    pub fn new() -> Self {
        FundamentalCache { entries: HashMap::new() }
    }

    /// `α^{(n)}_{s, i+ℓ}`; `s` is identified by its arms, so the cache must
    /// only ever see windows of one parent stencil.
    pub fn derivative(&mut self, s: &Stencil<T>, ell: i64, n: usize) -> Result<Poly<T>> {
        let key = (s.m_minus(), s.m_plus(), ell, n);
        if let Some(p) = self.entries.get(&key) {
            return Ok(p.clone());
        }
        let p = if n == 0 {
            fundamental(s, ell)?
        } else {
            self.derivative(s, ell, n - 1)?.derivative(1)
        };
        self.entries.insert(key, p.clone());
        Ok(p)
    }
}
