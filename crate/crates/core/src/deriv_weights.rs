//! Rational weight-functions for the `n`-th derivative of the interpolant.
//!
//! On a window `lo..=hi` the 1-level weights are ratios of fundamental
//! polynomial derivatives at the window ends,
//!
//! ```text
//! σ_0 = α^{(n)}_{lo..hi, lo} / α^{(n)}_{lo..hi-1, lo}
//! σ_1 = α^{(n)}_{lo..hi, hi} / α^{(n)}_{lo+1..hi, hi}
//! ```
//!
//! and higher levels follow the same recurrence as the interpolation
//! weights, now over rational functions. For `n = 0` everything collapses
//! to the polynomial weights.

use crate::error::{range_err, Error, Result};
use crate::lagrange::{fundamental_derivative_at, FundamentalCache};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use crate::stencil::{Stencil, SubdivisionSpec};
use crate::weights::level_recurrence;

#[derive(Clone, Debug, PartialEq)]
pub struct DerivWeightFamily<T> {
    stencil: Stencil<T>,
    k_level: usize,
    deriv_order: usize,
    sigmas: Vec<RatFunc<T>>,
    pole_poly: Poly<T>,
}

impl<T: Scalar> DerivWeightFamily<T> {
    pub fn stencil(&self) -> &Stencil<T> {
        &self.stencil
    }

    pub fn k_level(&self) -> usize {
        self.k_level
    }

    pub fn deriv_order(&self) -> usize {
        self.deriv_order
    }

    pub fn sigmas(&self) -> &[RatFunc<T>] {
        &self.sigmas
    }

    /// Product of the weights' denominators; every pole is one of its roots.
    pub fn pole_poly(&self) -> &Poly<T> {
        &self.pole_poly
    }

    pub fn substencil(&self, k: usize) -> Result<Stencil<T>> {
        self.stencil.substencil(SubdivisionSpec::new(self.k_level, k))
    }

    /// Weights at `x`; fails with a pole error if any denominator vanishes.
    ///
    /// Exact mode evaluates the reduced rational functions. Float mode runs
    /// the level recurrence on the 1-level values at `x` instead, since the
    /// unreduced float numerators and denominators are badly conditioned.
    pub fn eval(&self, x: &T) -> Result<Vec<T>> {
        if T::EXACT {
            self.sigmas.iter().map(|s| s.eval(x)).collect()
        } else {
            self.eval_pointwise(x)
        }
    }

    /// The level recurrence applied to the 1-level weight values at `x`,
    /// with every fundamental derivative evaluated without expansion.
    pub fn eval_pointwise(&self, x: &T) -> Result<Vec<T>> {
        let s = &self.stencil;
        let n = self.deriv_order;
        let ratio = |num: (T, T), den: (T, T)| {
            if T::is_negligible(&den.0, &den.1) {
                return Err(Error::Pole { at: x.to_string() });
            }
            Ok(num.0 / den.0)
        };
        level_recurrence(s.m(), self.k_level, |lo, hi| {
            let whole = s.window(lo, hi);
            let (l_off, h_off) = (lo as i64 - s.m_minus(), hi as i64 - s.m_minus());
            let s0 = ratio(
                fundamental_derivative_at(&whole, l_off, n, x)?,
                fundamental_derivative_at(&s.window(lo, hi - 1), l_off, n, x)?,
            )?;
            let s1 = ratio(
                fundamental_derivative_at(&whole, h_off, n, x)?,
                fundamental_derivative_at(&s.window(lo + 1, hi), h_off, n, x)?,
            )?;
            Ok([s0, s1])
        })
    }
}

fn one_level_pair<T: Scalar>(
    s: &Stencil<T>,
    cache: &mut FundamentalCache<T>,
    lo: usize,
    hi: usize,
    n: usize,
) -> Result<[RatFunc<T>; 2]> {
    let whole = s.window(lo, hi);
    let left = s.window(lo, hi - 1);
    let right = s.window(lo + 1, hi);
    let (l_off, h_off) = (lo as i64 - s.m_minus(), hi as i64 - s.m_minus());
    let s0 = RatFunc::new(cache.derivative(&whole, l_off, n)?, cache.derivative(&left, l_off, n)?)?;
    let s1 = RatFunc::new(cache.derivative(&whole, h_off, n)?, cache.derivative(&right, h_off, n)?)?;
    Ok([s0, s1])
}

fn pole_product<T: Scalar>(sigmas: &[RatFunc<T>]) -> Poly<T> {
    sigmas.iter().fold(Poly::one(), |acc, s| &acc * s.den())
}

/// `K_s = 1` derivative weights. Requires `M >= 2` and `n <= M - 1`.
pub fn deriv_one_level<T: Scalar>(s: &Stencil<T>, n: usize) -> Result<DerivWeightFamily<T>> {
    deriv_weights(s, 1, n)
}

/// Level-`K_s` derivative weights. Requires `1 <= K_s <= M - 1` and
/// `n <= M - K_s`, so that substencil derivatives do not vanish.
pub fn deriv_weights<T: Scalar>(s: &Stencil<T>, k_level: usize, n: usize) -> Result<DerivWeightFamily<T>> {
    s.check_level(k_level)?;
    let m = s.m();
    if n > m - k_level {
        return range_err(format!("derivative order n = {n} exceeds M - K_s = {}", m - k_level));
    }
    let mut cache = FundamentalCache::new();
    let sigmas = level_recurrence(m, k_level, |lo, hi| one_level_pair(s, &mut cache, lo, hi, n))?;
    let pole_poly = pole_product(&sigmas);
    Ok(DerivWeightFamily { stencil: s.clone(), k_level, deriv_order: n, sigmas, pole_poly })
}

/// Product of the reduced denominators of the family's weights.
pub fn pole_report<T: Scalar>(fam: &DerivWeightFamily<T>) -> Poly<T> {
    fam.pole_poly.clone()
}

/// Unreduced pole candidates over the recursion tree:
/// `∏_{L=0}^{K_s-1} ∏_{l=0}^{L} α^{(n)}_{(l+1)..(M-L+l), M-L+l}`
/// (positions within the full stencil). Every pole of the level-`K_s`
/// family is a root of this polynomial.
pub fn candidate_pole_poly<T: Scalar>(s: &Stencil<T>, k_level: usize, n: usize) -> Result<Poly<T>> {
    s.check_level(k_level)?;
    let m = s.m();
    if n > m - k_level {
        return range_err(format!("derivative order n = {n} exceeds M - K_s = {}", m - k_level));
    }
    let mut cache = FundamentalCache::new();
    let mut acc = Poly::one();
    for level in 0..k_level {
        for l in 0..=level {
            let hi = m - level + l;
            let sub = s.window(l + 1, hi);
            let d = cache.derivative(&sub, hi as i64 - s.m_minus(), n)?;
            acc = &acc * &d;
        }
    }
    Ok(acc)
}

/// Whether every root of `p` is a root of `q` (exact mode, `q != 0`).
pub fn roots_contained<T: Scalar>(p: &Poly<T>, q: &Poly<T>) -> Result<bool> {
    let mut rest = p.clone();
    loop {
        if rest.is_constant() {
            return Ok(true);
        }
        let g = rest.gcd(q)?;
        if g.is_constant() {
            return Ok(false);
        }
        rest = rest.div_exact(&g)?;
    }
}
