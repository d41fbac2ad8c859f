//! Polynomial weight-functions combining substencil interpolants into the
//! full-stencil interpolant.
//!
//! For a level-`K_s` subdivision the full interpolant equals
//! `Σ_k σ_{K_s,k}(x) p_{sub k}(x; f)` with `Σ_k σ_{K_s,k} = 1`. Each weight
//! has the closed form `(-1)^{K_s-k} ς_k ∏ (x - x_n)` over the nodes left
//! out of substencil `k`, with `ς_k > 0`.

use std::cmp::min;

use crate::error::{range_err, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::scalar::{sign_power, Scalar};
use crate::stencil::{Stencil, SubdivisionSpec};

/// Ring operations the level recurrence needs from a weight value.
pub trait WeightRing: Clone {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl<T: Scalar> WeightRing for T {
    fn add(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
}

impl<T: Scalar> WeightRing for Poly<T> {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl<T: Scalar> WeightRing for RatFunc<T> {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Builds level-`k_level` weights of a stencil with `m + 1` nodes from its
/// 1-level rule.
///
/// `one_level(lo, hi)` returns the pair of 1-level weights of the window of
/// node positions `lo..=hi`: index 0 multiplies the window minus its right
/// end, index 1 the window minus its left end. Level `L` is
///
/// ```text
/// σ_{L,k} = Σ_{l = max(0, k-1)}^{min(L-1, k)} σ_{L-1,l} · σ^{(l, m-L+1+l)}_{1,k-l}
/// ```
///
/// Levels are built bottom-up, so every window's 1-level pair is requested
/// exactly once.
pub fn level_recurrence<W, F>(m: usize, k_level: usize, mut one_level: F) -> Result<Vec<W>>
where
    W: WeightRing,
    F: FnMut(usize, usize) -> Result<[W; 2]>,
{
    if m < 2 || k_level < 1 || k_level > m - 1 {
        return range_err(format!("K_s = {k_level} not in 1..={}", m.saturating_sub(1)));
    }
    let mut family = one_level(0, m)?.to_vec();
    for level in 2..=k_level {
        let pairs = (0..level)
            .map(|l| one_level(l, m - (level - 1) + l))
            .collect::<Result<Vec<_>>>()?;
        family = (0..=level)
            .map(|k| {
                let lo = k.saturating_sub(1);
                let hi = min(level - 1, k);
                let mut acc = family[lo].mul(&pairs[lo][k - lo]);
                for l in lo + 1..=hi {
                    acc = acc.add(&family[l].mul(&pairs[l][k - l]));
                }
                acc
            })
            .collect();
    }
    Ok(family)
}

/// Weight polynomials `σ_{K_s,k}` and positive constants `ς_k` of one stencil.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightFamily<T> {
    stencil: Stencil<T>,
    k_level: usize,
    sigmas: Vec<Poly<T>>,
    varsigma: Vec<T>,
}

impl<T: Scalar> WeightFamily<T> {
    pub fn stencil(&self) -> &Stencil<T> {
        &self.stencil
    }

    pub fn k_level(&self) -> usize {
        self.k_level
    }

    pub fn sigmas(&self) -> &[Poly<T>] {
        &self.sigmas
    }

    pub fn varsigma(&self) -> &[T] {
        &self.varsigma
    }

    /// Signed constants `γ_k = (-1)^{K_s-k} ς_k`, i.e. the leading
    /// coefficients of the weights.
    pub fn gamma(&self) -> Vec<T> {
        self.varsigma
            .iter()
            .enumerate()
            .map(|(k, s)| sign_power::<T>(self.k_level - k) * s.clone())
            .collect()
    }

    pub fn substencil(&self, k: usize) -> Result<Stencil<T>> {
        self.stencil.substencil(SubdivisionSpec::new(self.k_level, k))
    }

    /// Optimal linear weights at `x`.
    ///
    /// Float mode uses the product form, which avoids the cancellation of
    /// the expanded coefficients.
    pub fn eval(&self, x: &T) -> Vec<T> {
        if T::EXACT {
            return self.sigmas.iter().map(|s| s.eval(x)).collect();
        }
        self.gamma()
            .into_iter()
            .enumerate()
            .map(|(k, g)| {
                self.excluded_nodes(k)
                    .into_iter()
                    .fold(g, |acc, xn| acc * (x.clone() - xn.clone()))
            })
            .collect()
    }

    /// Nodes of the full stencil that substencil `k` leaves out; these are
    /// exactly the roots of `σ_{K_s,k}`.
    pub fn excluded_nodes(&self, k: usize) -> Vec<&T> {
        excluded_nodes(&self.stencil, self.k_level, k)
    }
}

fn excluded_nodes<T: Scalar>(s: &Stencil<T>, k_level: usize, k: usize) -> Vec<&T> {
    let m = s.m();
    let nodes = s.nodes();
    nodes[..k].iter().chain(nodes[m - k_level + k + 1..].iter()).collect()
}

fn aitken_pair<T: Scalar>(s: &Stencil<T>, lo: usize, hi: usize) -> [Poly<T>; 2] {
    let (xl, xh) = (&s.nodes()[lo], &s.nodes()[hi]);
    let inv = T::one() / (xh.clone() - xl.clone());
    // (x_hi - x)/(x_hi - x_lo), (x - x_lo)/(x_hi - x_lo)
    let left = Poly::new(vec![xh.clone() * inv.clone(), -inv.clone()]);
    let right = Poly::new(vec![-xl.clone() * inv.clone(), inv]);
    [left, right]
}

fn varsigma_from_leads<T: Scalar>(k_level: usize, sigmas: &[Poly<T>]) -> Vec<T> {
    sigmas
        .iter()
        .enumerate()
        .map(|(k, s)| sign_power::<T>(k_level - k) * s.lead().cloned().unwrap_or_else(T::zero))
        .collect()
}

/// `K_s = 1` weights (Aitken's lemma):
/// `σ_{1,0} = (x_{i+M+} - x)/(x_{i+M+} - x_{i-M-})`, `σ_{1,1} = 1 - σ_{1,0}`.
pub fn one_level_weights<T: Scalar>(s: &Stencil<T>) -> Result<WeightFamily<T>> {
    let m = s.m();
    if m < 2 {
        return range_err(format!("1-level weights need M >= 2, stencil has M = {m}"));
    }
    let sigmas = aitken_pair(s, 0, m).to_vec();
    let varsigma = varsigma_from_leads(1, &sigmas);
    Ok(WeightFamily { stencil: s.clone(), k_level: 1, sigmas, varsigma })
}

/// Weights by the level recurrence over products of Aitken pairs.
pub fn weights_by_recurrence<T: Scalar>(s: &Stencil<T>, k_level: usize) -> Result<WeightFamily<T>> {
    s.check_level(k_level)?;
    let sigmas = level_recurrence(s.m(), k_level, |lo, hi| Ok(aitken_pair(s, lo, hi)))?;
    let varsigma = varsigma_from_leads(k_level, &sigmas);
    Ok(WeightFamily { stencil: s.clone(), k_level, sigmas, varsigma })
}

/// `ς_{K_s,k}` by the scalar recurrence, seeded with
/// `ς_{1,0} = ς_{1,1} = 1 / (x_hi - x_lo)` on every window.
pub fn varsigma<T: Scalar>(s: &Stencil<T>, k_level: usize) -> Result<Vec<T>> {
    s.check_level(k_level)?;
    let xs = s.nodes();
    level_recurrence(s.m(), k_level, |lo, hi| {
        let c = T::one() / (xs[hi].clone() - xs[lo].clone());
        Ok([c.clone(), c])
    })
}

/// Weights from the closed product form `(-1)^{K_s-k} ς_k ∏_{excluded} (x - x_n)`.
pub fn weights_explicit<T: Scalar>(s: &Stencil<T>, k_level: usize) -> Result<WeightFamily<T>> {
    let varsigma = varsigma(s, k_level)?;
    let sigmas = varsigma
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let coef = sign_power::<T>(k_level - k) * c.clone();
            Poly::from_roots(excluded_nodes(s, k_level, k)).scale(&coef)
        })
        .collect();
    Ok(WeightFamily { stencil: s.clone(), k_level, sigmas, varsigma })
}

/// Interval `[x_{i-M-+K_s-1}, x_{i+M+-K_s+1}]` on which every `σ_{K_s,k}`
/// lies in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityInterval<T> {
    pub lo_offset: i64,
    pub hi_offset: i64,
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> PositivityInterval<T> {
    pub fn bounds(&self) -> (T, T) {
        (self.lo.clone(), self.hi.clone())
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Requires `1 <= K_s <= ⌈M/2⌉` (and `M >= 2`).
pub fn positivity_interval<T: Scalar>(s: &Stencil<T>, k_level: usize) -> Result<PositivityInterval<T>> {
    let m = s.m();
    if m < 2 {
        return range_err(format!("positivity interval needs M >= 2, stencil has M = {m}"));
    }
    let cap = m.div_ceil(2);
    if k_level < 1 || k_level > cap {
        return range_err(format!("K_s = {k_level} not in 1..={cap} (ceil(M/2))"));
    }
    let k = k_level as i64;
    let lo_offset = -s.m_minus() + k - 1;
    let hi_offset = s.m_plus() - k + 1;
    Ok(PositivityInterval {
        lo_offset,
        hi_offset,
        lo: s.node(lo_offset).clone(),
        hi: s.node(hi_offset).clone(),
    })
}

/// The interval when admissible, `None` when `K_s > ⌈M/2⌉`.
pub fn positivity_interval_opt<T: Scalar>(s: &Stencil<T>, k_level: usize) -> Option<PositivityInterval<T>> {
    positivity_interval(s, k_level).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::lagrange::{fundamental, interpolate, SampledFunction};
    use crate::Q;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn st(m_minus: i64, nodes: &[i64]) -> Stencil<Q> {
        let m_plus = nodes.len() as i64 - 1 - m_minus;
        Stencil::new(m_minus, m_plus, nodes.iter().map(|&v| Q::from_int(v)).collect()).unwrap()
    }

    fn pq(c: &[(i64, i64)]) -> Poly<Q> {
        Poly::new(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn one_level_symmetric() {
        let fam = one_level_weights(&st(1, &[-1, 0, 1])).unwrap();
        assert_eq!(fam.sigmas()[0], pq(&[(1, 2), (-1, 2)]));
        assert_eq!(fam.sigmas()[1], pq(&[(1, 2), (1, 2)]));
        assert_eq!(fam.varsigma(), &[q(1, 2), q(1, 2)]);
        assert_eq!(&fam.sigmas()[0] + &fam.sigmas()[1], Poly::one());
    }

    #[test]
    fn one_level_inhomogeneous() {
        let fam = one_level_weights(&st(1, &[0, 1, 3])).unwrap();
        assert_eq!(fam.varsigma(), &[q(1, 3), q(1, 3)]);
        assert!(matches!(one_level_weights(&st(0, &[0, 1])), Err(Error::Range(_))));
    }

    // (1/6)(x-1)(x-2), -(1/3)(x+1)(x-2), (1/6)(x+1)x
    fn hand_expanded() -> Vec<Poly<Q>> {
        vec![
            pq(&[(1, 3), (-1, 2), (1, 6)]),
            pq(&[(2, 3), (1, 3), (-1, 3)]),
            pq(&[(0, 1), (1, 6), (1, 6)]),
        ]
    }

    #[test]
    fn recurrence_level_two_matches_hand_expansion() {
        let s = st(1, &[-1, 0, 1, 2]);
        let fam = weights_by_recurrence(&s, 2).unwrap();
        assert_eq!(fam.sigmas(), hand_expanded().as_slice());
        assert_eq!(fam.sigmas().iter().cloned().sum::<Poly<Q>>(), Poly::one());
    }

    #[test]
    fn recurrence_base_case_is_aitken() {
        let s = Stencil::new(1, 2, vec![q(-3, 2), q(0, 1), q(1, 3), q(5, 1)]).unwrap();
        assert_eq!(weights_by_recurrence(&s, 1).unwrap(), one_level_weights(&s).unwrap());
    }

    #[test]
    fn recurrence_five_points_sums_to_one() {
        let fam = weights_by_recurrence(&st(2, &[-2, -1, 0, 1, 2]), 2).unwrap();
        assert_eq!(fam.sigmas().iter().cloned().sum::<Poly<Q>>(), Poly::one());
    }

    #[test]
    fn explicit_level_two() {
        let s = st(1, &[-1, 0, 1, 2]);
        let fam = weights_explicit(&s, 2).unwrap();
        assert_eq!(fam.varsigma(), &[q(1, 6), q(1, 3), q(1, 6)]);
        assert_eq!(fam.sigmas(), hand_expanded().as_slice());
        assert_eq!(fam.gamma(), vec![q(1, 6), q(-1, 3), q(1, 6)]);
        let s3 = st(1, &[-1, 0, 1]);
        assert_eq!(weights_explicit(&s3, 1).unwrap().varsigma(), &[q(1, 2), q(1, 2)]);
    }

    #[test]
    fn level_out_of_range() {
        let s = st(1, &[-1, 0, 1, 2]);
        assert!(matches!(weights_by_recurrence(&s, 3), Err(Error::Range(_))));
        assert!(matches!(weights_explicit(&s, 0), Err(Error::Range(_))));
    }

    #[test]
    fn degrees_and_roots() {
        let s = Stencil::new(3, 4, (0..8).map(|j| q(j * j + j, 3)).collect()).unwrap();
        for k_level in 1..s.m() {
            let fam = weights_explicit(&s, k_level).unwrap();
            for (k, sigma) in fam.sigmas().iter().enumerate() {
                assert_eq!(sigma.degree(), k_level as isize);
                for x in fam.excluded_nodes(k) {
                    assert!(sigma.eval(x).is_zero());
                }
            }
        }
    }

    #[test]
    fn remark_ratio_form_of_one_level() {
        let s = Stencil::new(2, 1, vec![q(-2, 1), q(-1, 3), q(1, 2), q(7, 4)]).unwrap();
        let fam = one_level_weights(&s).unwrap();
        let sub0 = s.substencil(SubdivisionSpec::new(1, 0)).unwrap();
        let sub1 = s.substencil(SubdivisionSpec::new(1, 1)).unwrap();
        let r0 = RatFunc::new(fundamental(&s, -2).unwrap(), fundamental(&sub0, -2).unwrap()).unwrap();
        let r1 = RatFunc::new(fundamental(&s, 1).unwrap(), fundamental(&sub1, 1).unwrap()).unwrap();
        assert_eq!(r0, RatFunc::from_poly(fam.sigmas()[0].clone()));
        assert_eq!(r1, RatFunc::from_poly(fam.sigmas()[1].clone()));
    }

    #[test]
    fn representation_for_monomials() {
        let s = Stencil::new(2, 2, vec![q(-3, 1), q(-1, 2), q(0, 1), q(2, 3), q(4, 1)]).unwrap();
        for k_level in 1..s.m() {
            let fam = weights_explicit(&s, k_level).unwrap();
            for j in 0..=s.m() {
                let f = SampledFunction::sample(&s, |x| num_traits::pow(x.clone(), j));
                let full = interpolate(&s, &f).unwrap();
                let combined: Poly<Q> = (0..=k_level)
                    .map(|k| &fam.sigmas()[k] * &interpolate(&fam.substencil(k).unwrap(), &f).unwrap())
                    .sum();
                assert_eq!(combined, full);
            }
        }
    }

    #[test]
    fn positivity_interval_examples() {
        // arms (r-1, r), K_s = r-1
        for r in 2..=4 {
            let s = Stencil::<Q>::uniform(r - 1, r, Q::zero(), Q::one()).unwrap();
            let iv = positivity_interval(&s, (r - 1) as usize).unwrap();
            assert_eq!((iv.lo_offset, iv.hi_offset), (-1, 2));
        }
        // arms (r, r), K_s = r
        for r in 1..=4 {
            let s = Stencil::<Q>::uniform(r, r, Q::zero(), Q::one()).unwrap();
            let iv = positivity_interval(&s, r as usize).unwrap();
            assert_eq!((iv.lo_offset, iv.hi_offset), (-1, 1));
        }
        let iv = positivity_interval(&st(1, &[-1, 0, 1]), 1).unwrap();
        assert_eq!(iv.bounds(), (q(-1, 1), q(1, 1)));
        assert!(matches!(positivity_interval(&st(1, &[-1, 0, 1, 2]), 3), Err(Error::Range(_))));
    }

    #[test]
    fn weights_exist_beyond_positivity_cap() {
        let s = st(2, &[-2, -1, 0, 1, 2, 3]);
        assert!(positivity_interval(&s, 4).is_err());
        assert!(weights_explicit(&s, 4).is_ok());
    }

    #[test]
    fn float_mode_builds_same_shape() {
        let s = Stencil::<f64>::uniform(2, 2, 0.0, 1.0).unwrap();
        let fam = weights_explicit(&s, 2).unwrap();
        let total: f64 = fam.eval(&0.3).iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
        let rec = weights_by_recurrence(&s, 2).unwrap();
        for (a, b) in fam.sigmas().iter().zip(rec.sigmas()) {
            assert!(a.approx_eq(b));
        }
    }
}
