mod common;

use common::arb_stencil;
use proptest::prelude::*;
use substencil::{Stencil, SubdivisionSpec, Q};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sliding_property(s in arb_stencil(2, 8)) {
        let m = s.m();
        for k_level in 1..m {
            let subs = s.substencils(k_level).unwrap();
            prop_assert_eq!(subs.len(), k_level + 1);
            for (k, pair) in subs.windows(2).enumerate() {
                let (a, b) = (&pair[0], &pair[1]);
                prop_assert_eq!(a.m(), m - k_level);
                prop_assert_eq!(&a.nodes()[1..], &b.nodes()[..b.nodes().len() - 1]);
                prop_assert_eq!(b.last(), s.node(s.m_plus() - k_level as i64 + k as i64 + 1));
            }
            prop_assert!(s.substencil_union_check(k_level));
        }
    }

    #[test]
    fn substencils_are_valid_stencils(s in arb_stencil(2, 8)) {
        for k_level in 1..s.m() {
            for k in 0..=k_level {
                let sub = s.substencil(SubdivisionSpec::new(k_level, k)).unwrap();
                let again = Stencil::new(sub.m_minus(), sub.m_plus(), sub.nodes().to_vec()).unwrap();
                prop_assert_eq!(&again, &sub);
                for ell in sub.offsets() {
                    prop_assert_eq!(sub.node(ell), s.node(ell));
                }
            }
        }
    }

    #[test]
    fn descriptor_round_trip(s in arb_stencil(0, 8)) {
        let text = serde_json::to_string(&s.to_descriptor()).unwrap();
        prop_assert_eq!(Stencil::<Q>::from_json_str(&text).unwrap(), s);
    }
}
