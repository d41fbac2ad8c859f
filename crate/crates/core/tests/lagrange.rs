mod common;

use common::{arb_rational, arb_stencil};
use num_traits::{One, Zero};
use proptest::prelude::*;
use substencil::sampling::random_samples;
use substencil::{fundamental, interp_derivative, interpolate, neville_eval, Poly, SampledFunction, Stencil, Q};

fn monic_with_roots(s: &Stencil<Q>, offsets: std::ops::RangeInclusive<i64>) -> Poly<Q> {
    Poly::from_roots(offsets.map(|k| s.node(k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partition_of_unity(s in arb_stencil(0, 8)) {
        let total = s.offsets().fold(Poly::zero(), |acc, l| &acc + &fundamental(&s, l).unwrap());
        prop_assert_eq!(total, Poly::one());
    }

    #[test]
    fn interpolation_is_linear(s in arb_stencil(1, 6), a in arb_rational(), b in arb_rational(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = random_samples(&mut rng, &s);
        let g = random_samples(&mut rng, &s);
        let lhs = interpolate(&s, &f.combine(&a, &g, &b)).unwrap();
        let rhs = &interpolate(&s, &f).unwrap().scale(&a) + &interpolate(&s, &g).unwrap().scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn neville_tableau_agrees(s in arb_stencil(0, 6), x in arb_rational(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = random_samples(&mut rng, &s);
        prop_assert_eq!(neville_eval(&s, &f, &x).unwrap(), interpolate(&s, &f).unwrap().eval(&x));
    }

    /// A monic degree-`M` polynomial is reproduced on the full stencil; on
    /// a one-short substencil the interpolant misses it by the nodal
    /// polynomial of that substencil, for every derivative order.
    #[test]
    fn remainder_consequences(s in arb_stencil(2, 7), lower in prop::collection::vec(arb_rational(), 8)) {
        let m = s.m();
        let mut coeffs: Vec<Q> = lower[..m].to_vec();
        coeffs.push(Q::one());
        let qp = Poly::new(coeffs);
        let samples = SampledFunction::sample(&s, |x| qp.eval(x));
        let (l, r) = (-s.m_minus(), s.m_plus());
        let subs = s.substencils(1).unwrap();
        let left_gap = monic_with_roots(&s, l..=r - 1);
        let right_gap = monic_with_roots(&s, l + 1..=r);
        for n in 0..=m {
            prop_assert_eq!(interp_derivative(&s, &samples, n).unwrap(), qp.derivative(n));
            prop_assert_eq!(
                interp_derivative(&subs[0], &samples, n).unwrap(),
                &qp.derivative(n) - &left_gap.derivative(n)
            );
            prop_assert_eq!(
                interp_derivative(&subs[1], &samples, n).unwrap(),
                &qp.derivative(n) - &right_gap.derivative(n)
            );
        }
    }
}

#[test]
fn cardinal_values_on_every_node() {
    let s = Stencil::new(1, 2, vec![common::q(-3, 2), Q::zero(), common::q(2, 3), common::q(7, 2)]).unwrap();
    for ell in s.offsets() {
        let a = fundamental(&s, ell).unwrap();
        for k in s.offsets() {
            assert_eq!(a.eval(s.node(k)), if k == ell { Q::one() } else { Q::zero() });
        }
    }
}
