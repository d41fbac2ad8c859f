//! JSON forms of computed families.

use serde_json::{json, Value};

use crate::deriv_weights::DerivWeightFamily;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::weights::{positivity_interval_opt, PositivityInterval, WeightFamily};

/// Ascending-degree coefficients.
pub fn poly_json<T: Scalar>(p: &Poly<T>) -> Value {
    Value::Array(p.coeffs().iter().map(Scalar::to_json).collect())
}

pub fn interval_json<T: Scalar>(iv: &PositivityInterval<T>) -> Value {
    json!([iv.lo.to_json(), iv.hi.to_json()])
}

/// `{"K_s", "sigmas", "varsigma", "positivity_interval"}`; the interval is
/// `null` when `K_s > ⌈M/2⌉`.
pub fn weight_family_json<T: Scalar>(fam: &WeightFamily<T>) -> Value {
    let interval = positivity_interval_opt(fam.stencil(), fam.k_level());
    json!({
        "K_s": fam.k_level(),
        "sigmas": fam.sigmas().iter().map(poly_json).collect::<Vec<_>>(),
        "varsigma": fam.varsigma().iter().map(Scalar::to_json).collect::<Vec<_>>(),
        "positivity_interval": interval.as_ref().map_or(Value::Null, interval_json),
    })
}

/// `{"K_s", "n", "sigmas": [{"num", "den"}], "pole_poly"}`.
pub fn deriv_family_json<T: Scalar>(fam: &DerivWeightFamily<T>) -> Value {
    let sigmas: Vec<Value> = fam
        .sigmas()
        .iter()
        .map(|r| json!({ "num": poly_json(r.num()), "den": poly_json(r.den()) }))
        .collect();
    json!({
        "K_s": fam.k_level(),
        "n": fam.deriv_order(),
        "sigmas": sigmas,
        "pole_poly": poly_json(fam.pole_poly()),
    })
}
