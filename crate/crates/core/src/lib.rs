//! Weight-functions that express the Lagrange interpolant on a stencil, and
//! its derivatives, as a weighted sum of interpolants on Neville
//! substencils.
//!
//! Everything is generic over [`Scalar`]: [`Q`] (exact rationals), `f64`
//! or `f32`.
//!
//! ```
//! use substencil::{weights_explicit, ExactStencil, Q};
//! use substencil::scalar::Scalar;
//!
//! let s = ExactStencil::new(1, 1, vec![Q::from_int(-1), Q::from_int(0), Q::from_int(1)]).unwrap();
//! let fam = weights_explicit(&s, 1).unwrap();
//! assert_eq!(fam.eval(&Q::from_ratio(1, 2)), vec![Q::from_ratio(1, 4), Q::from_ratio(3, 4)]);
//! ```

pub mod deriv_weights;
pub mod error;
pub mod io;
pub mod lagrange;
pub mod oracle;
pub mod poly;
pub mod ratfunc;
pub mod sampling;
pub mod scalar;
pub mod stencil;
pub mod weights;

pub use deriv_weights::{
    candidate_pole_poly, deriv_one_level, deriv_weights, pole_report, roots_contained, DerivWeightFamily,
};
pub use error::{Error, Result};
pub use lagrange::{fundamental, fundamental_derivative_at, interp_derivative, interpolate, neville_eval, SampledFunction};
pub use oracle::{
    oracle_basis, oracle_system, verify_family, weights_via_linear_system, OracleBasis, OracleSystem, Status, VerificationReport,
};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use scalar::{Mode, Scalar};
pub use stencil::{Stencil, StencilDescriptor, SubdivisionSpec};
pub use weights::{
    one_level_weights, positivity_interval, varsigma, weights_by_recurrence, weights_explicit, PositivityInterval,
    WeightFamily,
};

/// Exact rational scalar.
pub type Q = num_rational::BigRational;

pub type ExactPoly = Poly<Q>;
pub type FloatPoly = Poly<f64>;
pub type ExactRatFunc = RatFunc<Q>;
pub type FloatRatFunc = RatFunc<f64>;
pub type ExactStencil = Stencil<Q>;
pub type FloatStencil = Stencil<f64>;
pub type ExactWeightFamily = WeightFamily<Q>;
pub type FloatWeightFamily = WeightFamily<f64>;
pub type ExactDerivWeightFamily = DerivWeightFamily<Q>;
pub type FloatDerivWeightFamily = DerivWeightFamily<f64>;
