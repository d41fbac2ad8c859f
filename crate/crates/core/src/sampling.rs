//! Random rational stencils and sample points for property checks.

use rand::Rng;

use crate::lagrange::SampledFunction;
use crate::scalar::Scalar;
use crate::stencil::Stencil;

/// A random rational `p/q` with `|p| <= num_bound`, `1 <= q <= den_bound`.
pub fn random_rational<T: Scalar, R: Rng + ?Sized>(rng: &mut R, num_bound: i64, den_bound: i64) -> T {
    T::from_ratio(rng.gen_range(-num_bound..=num_bound), rng.gen_range(1..=den_bound))
}

/// Strictly increasing rational nodes with random gaps in `(0, 12]` of
/// small denominator.
pub fn random_stencil<T: Scalar, R: Rng + ?Sized>(rng: &mut R, m_minus: i64, m_plus: i64) -> Stencil<T> {
    let count = (m_minus + m_plus + 1) as usize;
    let mut x: T = random_rational(rng, 12, 4);
    let mut nodes = Vec::with_capacity(count);
    for j in 0..count {
        if j > 0 {
            x = x + T::from_ratio(rng.gen_range(1..=12), rng.gen_range(1..=6));
        }
        nodes.push(x.clone());
    }
    Stencil::new(m_minus, m_plus, nodes).expect("gaps are positive")
}

/// Float-friendly variant of [`random_stencil`]: gaps in `[1/4, 3]`
/// (all at least `0.1`), nodes centred on the origin.
pub fn random_centred_stencil<T: Scalar, R: Rng + ?Sized>(rng: &mut R, m_minus: i64, m_plus: i64) -> Stencil<T> {
    let count = (m_minus + m_plus + 1) as usize;
    let mut gaps = Vec::with_capacity(count);
    let mut x = T::zero();
    for j in 0..count {
        if j > 0 {
            x = x + T::from_ratio(rng.gen_range(1..=12), 4);
        }
        gaps.push(x.clone());
    }
    let mid = (gaps[0].clone() + x) / T::from_int(2);
    let nodes = gaps.into_iter().map(|v| v - mid.clone()).collect();
    Stencil::new(m_minus, m_plus, nodes).expect("gaps are positive")
}

/// Random rational in `[lo - 1, hi + 1]`, drawn on a grid of step `1/60`.
pub fn random_point_near<T: Scalar, R: Rng + ?Sized>(rng: &mut R, lo: &T, hi: &T) -> T {
    let t = T::from_ratio(rng.gen_range(0..=60), 60);
    let span = hi.clone() - lo.clone() + T::from_int(2);
    lo.clone() - T::one() + t * span + T::from_ratio(rng.gen_range(0..=6), 397)
}

/// Random rational samples on every node of `s`.
pub fn random_samples<T: Scalar, R: Rng + ?Sized>(rng: &mut R, s: &Stencil<T>) -> SampledFunction<T> {
    let values = s.offsets().map(|_| random_rational(rng, 20, 7)).collect();
    SampledFunction::from_values(-s.m_minus(), values)
}
