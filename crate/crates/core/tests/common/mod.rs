#![allow(dead_code)]

use num_traits::One;
use proptest::prelude::*;
use substencil::scalar::Scalar;
use substencil::{fundamental, Poly, RatFunc, Stencil, Q};

pub fn q(n: i64, d: i64) -> Q {
    Q::from_ratio(n, d)
}

/// Rational stencils with `min_m <= M <= max_m`, any split of the arms.
pub fn arb_stencil(min_m: i64, max_m: i64) -> impl Strategy<Value = Stencil<Q>> {
    (min_m..=max_m)
        .prop_flat_map(|m| (0..=m).prop_map(move |mm| (mm, m - mm)))
        .prop_flat_map(|(mm, mp)| {
            let gaps = prop::collection::vec((1i64..=12, 1i64..=6), (mm + mp) as usize);
            ((-24i64..=24, 1i64..=4), gaps).prop_map(move |((p, d), gaps)| {
                let mut x = q(p, d);
                let mut nodes = vec![x.clone()];
                for (gp, gd) in gaps {
                    x += q(gp, gd);
                    nodes.push(x.clone());
                }
                Stencil::new(mm, mp, nodes).unwrap()
            })
        })
}

pub fn arb_rational() -> impl Strategy<Value = Q> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

pub fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly<Q>> {
    prop::collection::vec(arb_rational(), 0..=max_deg + 1).prop_map(Poly::new)
}

fn sub_window(s: &Stencil<Q>, shift: usize) -> Stencil<Q> {
    s.substencils(1).unwrap().swap_remove(shift)
}

fn d(s: &Stencil<Q>, ell: i64, n: usize) -> Poly<Q> {
    fundamental(s, ell).unwrap().derivative(n)
}

/// Endpoint proportionality: `α^{(n)}_{sub0, -M-} = c α^{(n)}_{sub1, M+}` with
/// one constant `c` for every `n <= M - 1`.
pub fn check_proportionality(s: &Stencil<Q>) -> Result<(), String> {
    let (l, r) = (-s.m_minus(), s.m_plus());
    let (xl, xr) = (s.node(l).clone(), s.node(r).clone());
    let c = (l + 1..r).fold(Q::one(), |acc, k| {
        let xk = s.node(k);
        acc * (xr.clone() - xk) / (xl.clone() - xk)
    });
    let (sub0, sub1) = (sub_window(s, 0), sub_window(s, 1));
    for n in 0..s.m() {
        if d(&sub0, l, n) != d(&sub1, r, n).scale(&c) {
            return Err(format!("proportionality fails at n = {n} on {:?}", s.nodes()));
        }
    }
    Ok(())
}

/// `α^{(n-1)}/α^{(n)}` agrees between the left-end fundamental of sub0 and
/// the right-end fundamental of sub1, as reduced rational functions.
pub fn check_ratio_equality(s: &Stencil<Q>) -> Result<(), String> {
    let (l, r) = (-s.m_minus(), s.m_plus());
    let (sub0, sub1) = (sub_window(s, 0), sub_window(s, 1));
    for n in 1..s.m() {
        let a = RatFunc::new(d(&sub0, l, n - 1), d(&sub0, l, n)).map_err(|e| e.to_string())?;
        let b = RatFunc::new(d(&sub1, r, n - 1), d(&sub1, r, n)).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("ratio equality fails at n = {n} on {:?}", s.nodes()));
        }
    }
    Ok(())
}

/// Differentiation recurrences linking the full-stencil endpoint
/// fundamentals to those of the two one-short substencils.
pub fn check_leibniz(s: &Stencil<Q>) -> Result<(), String> {
    let (l, r) = (-s.m_minus(), s.m_plus());
    let (xl, xr) = (s.node(l).clone(), s.node(r).clone());
    let width = xr.clone() - xl.clone();
    let (sub0, sub1) = (sub_window(s, 0), sub_window(s, 1));
    let lin = |root: &Q| Poly::new(vec![-root.clone(), Q::one()]);
    for n in 0..s.m() {
        let nq = Q::from_int(n as i64);
        let prev = |sub: &Stencil<Q>, ell| if n == 0 { Poly::zero() } else { d(sub, ell, n - 1) };
        let left = -(&(&lin(&xr) * &d(&sub0, l, n)) + &prev(&sub0, l).scale(&nq));
        if d(s, l, n).scale(&width) != left {
            return Err(format!("left recurrence fails at n = {n} on {:?}", s.nodes()));
        }
        let right = &(&lin(&xl) * &d(&sub1, r, n)) + &prev(&sub1, r).scale(&nq);
        if d(s, r, n).scale(&width) != right {
            return Err(format!("right recurrence fails at n = {n} on {:?}", s.nodes()));
        }
    }
    Ok(())
}

pub fn check_proof_identities(s: &Stencil<Q>) -> Result<(), String> {
    check_proportionality(s)?;
    check_ratio_equality(s)?;
    check_leibniz(s)
}
