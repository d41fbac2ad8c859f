//! Brute-force verification of weight families.
//!
//! The pointwise oracle never touches the weight recurrences: at a point
//! `x` it asks which multipliers `w_k` make the substencil derivatives
//! reproduce the full-stencil derivative for every nodal basis function,
//!
//! ```text
//! Σ_k w_k p^{(n)}_{sub k}(x; e_ℓ) = p^{(n)}_{full}(x; e_ℓ),   ℓ = -M-, …, M+
//! ```
//!
//! an overdetermined but consistent system in `K_s + 1` unknowns.

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::deriv_weights::{candidate_pole_poly, deriv_weights};
use crate::error::{range_err, Error, Result};
use crate::lagrange::{fundamental, interp_derivative, SampledFunction};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::sampling::{random_centred_stencil, random_point_near, random_stencil};
use crate::scalar::Scalar;
use crate::stencil::Stencil;
use crate::weights::{weights_by_recurrence, weights_explicit};

/// Rows of the pointwise oracle system, one per stencil offset.
#[derive(Clone, Debug)]
pub struct OracleSystem<T> {
    pub offsets: Vec<i64>,
    pub rows: Vec<Vec<T>>,
    pub rhs: Vec<T>,
}

impl<T: Scalar> OracleSystem<T> {
    pub fn unknowns(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Largest `|Σ_k a_{ℓk} w_k - b_ℓ|` over all rows.
    pub fn max_residual(&self, w: &[T]) -> T {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| (dot(row, w) - b.clone()).abs())
            .fold(T::zero(), max_of)
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn max_of<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

fn check_ranges<T: Scalar>(s: &Stencil<T>, k_level: usize, n: usize) -> Result<()> {
    let m = s.m();
    if m < 2 || k_level < 1 || k_level > m - 1 {
        return range_err(format!("K_s = {k_level} not in 1..={}", m.saturating_sub(1)));
    }
    if n > m - k_level {
        return range_err(format!("derivative order n = {n} exceeds M - K_s = {}", m - k_level));
    }
    Ok(())
}

/// Fundamental-polynomial derivatives behind the oracle system of one
/// `(stencil, K_s, n)` case; evaluating them at `x` gives the system there.
#[derive(Clone, Debug)]
pub struct OracleBasis<T> {
    offsets: Vec<i64>,
    /// `sub[ℓ][k]`: `α^{(n)}` of substencil `k` at offset `ℓ`, if it has one.
    sub: Vec<Vec<Option<Poly<T>>>>,
    full: Vec<Poly<T>>,
    candidate: Poly<T>,
}

pub fn oracle_basis<T: Scalar>(s: &Stencil<T>, k_level: usize, n: usize) -> Result<OracleBasis<T>> {
    check_ranges(s, k_level, n)?;
    let subs = s.substencils(k_level)?;
    let mut sub = Vec::new();
    let mut full = Vec::new();
    for ell in s.offsets() {
        let row = subs
            .iter()
            .map(|st| {
                if st.contains_offset(ell) {
                    Ok(Some(fundamental(st, ell)?.derivative(n)))
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        sub.push(row);
        full.push(fundamental(s, ell)?.derivative(n));
    }
    let candidate = if n > 0 { candidate_pole_poly(s, k_level, n)? } else { Poly::one() };
    Ok(OracleBasis { offsets: s.offsets().collect(), sub, full, candidate })
}

impl<T: Scalar> OracleBasis<T> {
    pub fn system_at(&self, x: &T) -> OracleSystem<T> {
        let rows = self
            .sub
            .iter()
            .map(|row| row.iter().map(|p| p.as_ref().map_or_else(T::zero, |p| p.eval(x))).collect())
            .collect();
        OracleSystem { offsets: self.offsets.clone(), rows, rhs: self.full.iter().map(|p| p.eval(x)).collect() }
    }

    /// Solves the system at `x`; see [`weights_via_linear_system`].
    pub fn solve_at(&self, x: &T) -> Result<Vec<T>> {
        if T::is_negligible(&self.candidate.eval(x), &self.candidate.norm_inf()) {
            return Err(Error::Pole { at: x.to_string() });
        }
        let sys = self.system_at(x);
        if T::EXACT {
            solve_selected_rows(&sys)
        } else {
            solve_least_squares(&sys)
        }
    }

    /// Largest coefficient gap in `Σ_k σ_k α_{sub k} = α_full` over all
    /// offsets, after clearing the denominators of `sigmas`.
    pub fn representation_gap(&self, sigmas: &[RatFunc<T>]) -> Result<T> {
        let (common, cofactors) = common_denominator(sigmas)?;
        let mut worst = T::zero();
        for (row, full) in self.sub.iter().zip(&self.full) {
            let rhs = &common * full;
            let mut lhs = Poly::zero();
            for ((sigma, cof), alpha) in sigmas.iter().zip(&cofactors).zip(row) {
                if let Some(alpha) = alpha {
                    lhs = &lhs + &(&(sigma.num() * cof) * alpha);
                }
            }
            worst = max_of(worst, poly_gap(&lhs, &rhs));
        }
        Ok(worst)
    }

    /// Representation residual at `x` for the weight values `w`, relative
    /// to the size of the terms in each row.
    pub fn representation_gap_at(&self, x: &T, w: &[T]) -> T {
        let sys = self.system_at(x);
        let mut worst = T::zero();
        for (row, rhs) in sys.rows.iter().zip(&sys.rhs) {
            let mut combined = T::zero();
            let mut magnitude = rhs.abs();
            for (a, wk) in row.iter().zip(w) {
                let term = a.clone() * wk.clone();
                magnitude = magnitude + term.abs();
                combined = combined + term;
            }
            worst = max_of(worst, value_gap(&combined, rhs, &magnitude));
        }
        worst
    }
}

fn common_denominator<T: Scalar>(sigmas: &[RatFunc<T>]) -> Result<(Poly<T>, Vec<Poly<T>>)> {
    let mut common = Poly::one();
    for r in sigmas.iter().filter(|r| !r.den().is_constant()) {
        let g = common.gcd(r.den())?;
        common = &common * &r.den().div_exact(&g)?;
    }
    let cofactors = sigmas.iter().map(|r| common.div_exact(r.den())).collect::<Result<Vec<_>>>()?;
    Ok((common, cofactors))
}

/// Assembles the pointwise system at `x` from fundamental polynomials.
pub fn oracle_system<T: Scalar>(s: &Stencil<T>, k_level: usize, n: usize, x: &T) -> Result<OracleSystem<T>> {
    Ok(oracle_basis(s, k_level, n)?.system_at(x))
}

/// Weights at `x` by solving the oracle system.
///
/// Exact mode keeps the first `K_s + 1` rows (by ascending offset) that
/// reach full rank, solves them, and then requires the remaining rows to
/// hold exactly. Float mode solves the least-squares problem. Points on
/// the candidate pole set are refused.
pub fn weights_via_linear_system<T: Scalar>(s: &Stencil<T>, k_level: usize, n: usize, x: &T) -> Result<Vec<T>> {
    oracle_basis(s, k_level, n)?.solve_at(x)
}

fn solve_selected_rows<T: Scalar>(sys: &OracleSystem<T>) -> Result<Vec<T>> {
    let unknowns = sys.unknowns();
    // echelon rows (reduced copy, pivot column) used only for the rank test
    let mut echelon: Vec<(Vec<T>, usize)> = Vec::new();
    let mut selected = Vec::new();
    for (i, row) in sys.rows.iter().enumerate() {
        let mut r = row.clone();
        for (b, pc) in &echelon {
            if !r[*pc].is_zero() {
                let f = r[*pc].clone() / b[*pc].clone();
                for (rj, bj) in r.iter_mut().zip(b) {
                    *rj = rj.clone() - f.clone() * bj.clone();
                }
            }
        }
        if let Some(pc) = r.iter().position(|v| !v.is_zero()) {
            echelon.push((r, pc));
            selected.push(i);
            if selected.len() == unknowns {
                break;
            }
        }
    }
    if selected.len() < unknowns {
        return Err(Error::SingularSystem { rank: selected.len(), unknowns });
    }
    let a = selected.iter().map(|&i| sys.rows[i].clone()).collect();
    let b = selected.iter().map(|&i| sys.rhs[i].clone()).collect();
    let w = solve_square(a, b)?;
    for (i, (row, rhs)) in sys.rows.iter().zip(&sys.rhs).enumerate() {
        if !(dot(row, &w) - rhs.clone()).is_zero() {
            return Err(Error::InconsistentSystem { offset: sys.offsets[i] });
        }
    }
    Ok(w)
}

/// Householder QR least squares, carried out in `f64`.
#[allow(clippy::needless_range_loop)]
fn solve_least_squares<T: Scalar>(sys: &OracleSystem<T>) -> Result<Vec<T>> {
    let cols = sys.unknowns();
    let rows = sys.rows.len();
    let mut a: Vec<Vec<f64>> = sys.rows.iter().map(|r| r.iter().map(T::as_f64).collect()).collect();
    let mut b: Vec<f64> = sys.rhs.iter().map(T::as_f64).collect();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    for c in 0..cols {
        let norm = (c..rows).map(|r| a[r][c] * a[r][c]).sum::<f64>().sqrt();
        if norm <= 1e-12 * (1.0 + scale) {
            return Err(Error::SingularSystem { rank: c, unknowns: cols });
        }
        let alpha = if a[c][c] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (c..rows).map(|r| a[r][c]).collect();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|t| t * t).sum();
        for j in c..cols {
            let f = 2.0 * (c..rows).map(|r| v[r - c] * a[r][j]).sum::<f64>() / vv;
            for r in c..rows {
                a[r][j] -= f * v[r - c];
            }
        }
        let f = 2.0 * (c..rows).map(|r| v[r - c] * b[r]).sum::<f64>() / vv;
        for r in c..rows {
            b[r] -= f * v[r - c];
        }
    }
    let mut w = vec![0.0f64; cols];
    for r in (0..cols).rev() {
        let tail: f64 = (r + 1..cols).map(|c| a[r][c] * w[c]).sum();
        w[r] = (b[r] - tail) / a[r][r];
    }
    Ok(w.into_iter().map(T::from_f64).collect())
}

/// Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn solve_square<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Result<Vec<T>> {
    let n = b.len();
    let scale = a.iter().flatten().map(|v| v.abs()).fold(T::zero(), max_of);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if T::is_negligible(&a[piv][col], &scale) {
            return Err(Error::SingularSystem { rank: col, unknowns: n });
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / a[col][col].clone();
            for c in col..n {
                a[r][c] = a[r][c].clone() - f.clone() * a[col][c].clone();
            }
            b[r] = b[r].clone() - f * b[col].clone();
        }
    }
    let mut w = vec![T::zero(); n];
    for r in (0..n).rev() {
        let tail = (r + 1..n).fold(T::zero(), |acc, c| acc + a[r][c].clone() * w[c].clone());
        w[r] = (b[r].clone() - tail) / a[r][r].clone();
    }
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

/// What a report covers.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseDescriptor {
    pub m_minus: i64,
    pub m_plus: i64,
    pub k_level: usize,
    pub n: usize,
    pub trials: usize,
    /// `"symbolic"` or a description of the pointwise sampling.
    pub sample: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport<T> {
    pub case: CaseDescriptor,
    pub status: Status,
    pub max_discrepancy: T,
    pub tolerance: T,
    /// The case was rejected by a range check; counted as a pass.
    pub invalid_input: bool,
    pub detail: String,
}

impl<T: Scalar> VerificationReport<T> {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One JSON-lines record.
    pub fn to_json(&self) -> Value {
        json!({
            "m_minus": self.case.m_minus,
            "m_plus": self.case.m_plus,
            "K_s": self.case.k_level,
            "n": self.case.n,
            "trials": self.case.trials,
            "sample": self.case.sample,
            "status": if self.passed() { "pass" } else { "fail" },
            "invalid_input": self.invalid_input,
            "max_discrepancy": self.max_discrepancy.to_json(),
            "tolerance": self.tolerance.to_json(),
            "detail": self.detail,
        })
    }
}

/// Agreement threshold: zero in exact mode, `1e-10` relative in float mode.
pub fn tolerance<T: Scalar>() -> T {
    if T::EXACT {
        T::zero()
    } else {
        T::from_ratio(1, 10_000_000_000)
    }
}

/// Exact: `|a - b|`. Float: `|a - b| / max(1, scale)`, where `scale`
/// bounds the magnitude of the terms that produced `a` and `b`.
fn value_gap<T: Scalar>(a: &T, b: &T, scale: &T) -> T {
    let d = (a.clone() - b.clone()).abs();
    if T::EXACT {
        d
    } else {
        d / max_of(T::one(), scale.clone())
    }
}

fn poly_gap<T: Scalar>(a: &Poly<T>, b: &Poly<T>) -> T {
    let d = (a - b).norm_inf();
    if T::EXACT {
        d
    } else {
        d / max_of(T::one(), b.norm_inf())
    }
}

/// Accumulated outcome of the checks on one stencil.
#[derive(Clone, Debug)]
struct Tally<T> {
    max: T,
    failures: Vec<String>,
}

impl<T: Scalar> Tally<T> {
    fn new() -> Self {
        Tally { max: T::zero(), failures: Vec::new() }
    }

    fn record(&mut self, what: &str, gap: T) {
        if gap > tolerance::<T>() {
            self.failures.push(format!("{what}: discrepancy {gap}"));
        }
        self.max = max_of(self.max.clone(), gap);
    }

    fn error(&mut self, what: &str, e: Error) {
        self.failures.push(format!("{what}: {e}"));
    }

    fn merge(mut self, other: Tally<T>) -> Self {
        self.max = max_of(self.max, other.max);
        self.failures.extend(other.failures);
        self
    }
}

const MAX_RESAMPLES: usize = 64;

fn near_pole<T: Scalar>(poles: &Poly<T>, x: &T) -> bool {
    let v = poles.eval(x).abs();
    let scale = poles.norm_inf();
    if T::EXACT {
        v.is_zero()
    } else {
        // keep float samples well away from poles
        v < T::from_ratio(1, 1_000_000) * (T::one() + scale)
    }
}

/// Draws a point near the stencil hull that avoids `poles` and admits a
/// full-rank oracle system; returns the point and the oracle weights.
fn oracle_point<T: Scalar>(
    s: &Stencil<T>,
    basis: &OracleBasis<T>,
    k_level: usize,
    poles: &Poly<T>,
    rng: &mut StdRng,
) -> Result<(T, Vec<T>)> {
    let mut last = None;
    for _ in 0..MAX_RESAMPLES {
        let x = random_point_near(rng, s.first(), s.last());
        if near_pole(poles, &x) {
            continue;
        }
        match basis.solve_at(&x) {
            Ok(w) => return Ok((x, w)),
            Err(e @ (Error::SingularSystem { .. } | Error::Pole { .. })) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or(Error::SingularSystem { rank: 0, unknowns: k_level + 1 }))
}

/// Every check on one stencil: consistency, recurrence-vs-explicit,
/// representation, and pointwise oracle agreement at `points` samples.
fn check_stencil<T: Scalar>(s: &Stencil<T>, k_level: usize, n: usize, points: usize, rng: &mut StdRng) -> Tally<T> {
    let mut t = Tally::new();
    let run = |t: &mut Tally<T>, rng: &mut StdRng| -> Result<()> {
        if n == 0 {
            let rec = weights_by_recurrence(s, k_level)?;
            let exp = weights_explicit(s, k_level)?;
            let total: Poly<T> = exp.sigmas().iter().cloned().sum();
            t.record("consistency", poly_gap(&total, &Poly::one()));
            for (a, b) in rec.sigmas().iter().zip(exp.sigmas()) {
                t.record("recurrence vs explicit", poly_gap(a, b));
            }
            let basis = oracle_basis(s, k_level, 0)?;
            let as_ratfuncs: Vec<RatFunc<T>> = exp.sigmas().iter().cloned().map(RatFunc::from_poly).collect();
            t.record("representation", basis.representation_gap(&as_ratfuncs)?);
            for _ in 0..points {
                let (x, w) = oracle_point(s, &basis, k_level, &Poly::one(), rng)?;
                let vals = exp.eval(&x);
                let scale = vals.iter().map(|v| v.abs()).fold(T::zero(), max_of);
                for (wk, vk) in w.iter().zip(&vals) {
                    t.record("oracle", value_gap(wk, vk, &scale));
                }
            }
        } else {
            let fam = deriv_weights(s, k_level, n)?;
            let basis = oracle_basis(s, k_level, n)?;
            if T::EXACT {
                let total = fam.sigmas().iter().fold(RatFunc::zero(), |a, b| &a + b);
                let diff = &total - &RatFunc::one();
                t.record("consistency", diff.num().norm_inf());
            }
            if T::EXACT && s.m() <= 5 {
                t.record("representation (symbolic)", basis.representation_gap(fam.sigmas())?);
            }
            for _ in 0..points {
                let (x, w) = oracle_point(s, &basis, k_level, fam.pole_poly(), rng)?;
                let vals = fam.eval(&x)?;
                let scale = vals.iter().map(|v| v.abs()).fold(T::zero(), max_of);
                if !T::EXACT {
                    let total = vals.iter().fold(T::zero(), |a, b| a + b.clone());
                    let abs_total = vals.iter().fold(T::zero(), |a, b| a + b.abs());
                    t.record("consistency", value_gap(&total, &T::one(), &abs_total));
                }
                for (wk, vk) in w.iter().zip(&vals) {
                    t.record("oracle", value_gap(wk, vk, &scale));
                }
                t.record("representation (pointwise)", basis.representation_gap_at(&x, &vals));
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut t, rng) {
        t.error("check aborted", e);
    }
    t
}

/// Clears denominators of `Σ_k σ_k p^{(n)}_{sub k}(·; e_ℓ) = p^{(n)}_{full}(·; e_ℓ)`
/// for every nodal basis function and returns the largest coefficient gap.
pub fn symbolic_representation_gap<T: Scalar>(
    s: &Stencil<T>,
    sigmas: &[RatFunc<T>],
    subs: &[Stencil<T>],
    n: usize,
) -> Result<T> {
    let (common, cofactors) = common_denominator(sigmas)?;
    let mut worst = T::zero();
    for ell in s.offsets() {
        let e = SampledFunction::kronecker(s, ell);
        let rhs = &common * &interp_derivative(s, &e, n)?;
        let mut lhs = Poly::zero();
        for ((sigma, cof), sub) in sigmas.iter().zip(&cofactors).zip(subs) {
            let sub_e = SampledFunction::kronecker(sub, ell);
            let term = &(sigma.num() * cof) * &interp_derivative(sub, &sub_e, n)?;
            lhs = &lhs + &term;
        }
        worst = max_of(worst, poly_gap(&lhs, &rhs));
    }
    Ok(worst)
}

/// Runs every check over `trials` random rational stencils with arms
/// `(m_minus, m_plus)`, `points` sample points each. Float mode draws
/// origin-centred stencils with gaps in `[1/4, 3]`. Trials run in
/// parallel; the report is deterministic for a fixed `seed`.
pub fn verify_family<T: Scalar>(
    m_minus: i64,
    m_plus: i64,
    k_level: usize,
    n: usize,
    trials: usize,
    points: usize,
    seed: u64,
) -> VerificationReport<T> {
    let case = CaseDescriptor {
        m_minus,
        m_plus,
        k_level,
        n,
        trials,
        sample: if n == 0 || (T::EXACT && m_minus + m_plus <= 5) {
            format!("symbolic + {points} random x")
        } else {
            format!("{points} random x")
        },
    };
    let m = m_minus + m_plus;
    let valid = m >= 2 && k_level >= 1 && (k_level as i64) < m && (n as i64) <= m - k_level as i64;
    if !valid {
        return VerificationReport {
            case,
            status: Status::Pass,
            max_discrepancy: T::zero(),
            tolerance: tolerance(),
            invalid_input: true,
            detail: format!("invalid input rejected: M = {m}, K_s = {k_level}, n = {n}"),
        };
    }
    let tally = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = StdRng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let s = if T::EXACT {
                random_stencil::<T, _>(&mut rng, m_minus, m_plus)
            } else {
                random_centred_stencil::<T, _>(&mut rng, m_minus, m_plus)
            };
            check_stencil(&s, k_level, n, points, &mut rng)
        })
        .reduce(Tally::new, Tally::merge);
    let status = if tally.failures.is_empty() { Status::Pass } else { Status::Fail };
    let detail = match tally.failures.first() {
        None => "all checks passed".to_string(),
        Some(f) => format!("{} failure(s); first: {f}", tally.failures.len()),
    };
    VerificationReport { case, status, max_discrepancy: tally.max, tolerance: tolerance(), invalid_input: false, detail }
}
