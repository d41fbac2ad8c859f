use serde_json::{json, Value};
use substencil::io::{deriv_family_json, interval_json, weight_family_json};
use substencil::scalar::Scalar;
use substencil::{
    deriv_weights, positivity_interval, verify_family, weights_explicit, Error, Result, Stencil,
    VerificationReport,
};

use crate::output::Output;

/// Requested `K_s`, or every level in `1..=max`.
fn levels(ks: Option<usize>, max: usize) -> Vec<usize> {
    match ks {
        Some(k) => vec![k],
        None => (1..=max).collect(),
    }
}

fn cells<T: Scalar>(values: &[T]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

pub fn weights<T: Scalar>(s: &Stencil<T>, ks: Option<usize>) -> Result<Output> {
    let ks = levels(ks, s.m().saturating_sub(1));
    let width = ks.iter().max().map_or(0, |k| k + 1);
    let mut out = Output::new(&["K_s", "k_s"]);
    out.numbered_columns("c", width);
    for k_level in ks {
        let fam = weights_explicit(s, k_level)?;
        out.records.push(weight_family_json(&fam));
        for (k, sigma) in fam.sigmas().iter().enumerate() {
            let mut row = vec![k_level.to_string(), k.to_string()];
            row.extend(cells(sigma.coeffs()));
            out.rows.push(row);
        }
    }
    Ok(out)
}

pub fn deriv<T: Scalar>(s: &Stencil<T>, ks: Option<usize>, n: usize) -> Result<Output> {
    let ks: Vec<usize> = match ks {
        Some(k) => vec![k],
        None => (1..s.m()).filter(|k| n <= s.m() - k).collect(),
    };
    if ks.is_empty() {
        return Err(Error::Range(format!("no level K_s admits derivative order n = {n} when M = {}", s.m())));
    }
    let mut fams = Vec::new();
    for k_level in ks {
        fams.push(deriv_weights(s, k_level, n)?);
    }
    let width = fams
        .iter()
        .flat_map(|f| f.sigmas().iter().flat_map(|r| [r.num().coeffs().len(), r.den().coeffs().len()]))
        .max()
        .unwrap_or(0);
    let mut out = Output::new(&["K_s", "k_s", "n", "part"]);
    out.numbered_columns("c", width);
    for fam in &fams {
        out.records.push(deriv_family_json(fam));
        for (k, r) in fam.sigmas().iter().enumerate() {
            for (part, p) in [("num", r.num()), ("den", r.den())] {
                let mut row = vec![fam.k_level().to_string(), k.to_string(), n.to_string(), part.to_string()];
                row.extend(cells(p.coeffs()));
                out.rows.push(row);
            }
        }
        let mut row = vec![fam.k_level().to_string(), String::new(), n.to_string(), "pole_poly".to_string()];
        row.extend(cells(fam.pole_poly().coeffs()));
        out.rows.push(row);
    }
    Ok(out)
}

pub fn positivity<T: Scalar>(s: &Stencil<T>, ks: Option<usize>) -> Result<Output> {
    let mut out = Output::new(&["K_s", "lo_offset", "hi_offset", "lo", "hi"]);
    for k_level in levels(ks, s.m().div_ceil(2)) {
        let iv = positivity_interval(s, k_level)?;
        out.records.push(json!({
            "K_s": k_level,
            "interval": interval_json(&iv),
            "offsets": [iv.lo_offset, iv.hi_offset],
        }));
        out.rows.push(vec![
            k_level.to_string(),
            iv.lo_offset.to_string(),
            iv.hi_offset.to_string(),
            iv.lo.to_string(),
            iv.hi.to_string(),
        ]);
    }
    Ok(out)
}

pub fn eval<T: Scalar>(s: &Stencil<T>, ks: Option<usize>, n: usize, at: &[String]) -> Result<Output> {
    if at.is_empty() {
        return Err(Error::Arity("eval needs at least one --at point".into()));
    }
    let points = at.iter().map(|a| T::parse_str(a)).collect::<Result<Vec<_>>>()?;
    let ks: Vec<usize> = match ks {
        Some(k) => vec![k],
        None => (1..s.m()).filter(|k| n <= s.m() - k).collect(),
    };
    let width = ks.iter().max().map_or(0, |k| k + 1);
    let mut out = Output::new(&["x", "K_s", "n"]);
    out.numbered_columns("w", width);
    for k_level in ks {
        let fam = deriv_weights(s, k_level, n)?;
        let poly = if n == 0 { Some(weights_explicit(s, k_level)?) } else { None };
        for x in &points {
            let w = match &poly {
                Some(p) => p.eval(x),
                None => fam.eval(x)?,
            };
            out.records.push(json!({
                "x": x.to_json(),
                "K_s": k_level,
                "n": n,
                "weights": w.iter().map(Scalar::to_json).collect::<Vec<Value>>(),
            }));
            let mut row = vec![x.to_string(), k_level.to_string(), n.to_string()];
            row.extend(cells(&w));
            out.rows.push(row);
        }
    }
    Ok(out)
}

/// Every arm split, level and derivative order with `2 <= M <= max_m`.
pub fn verify<T: Scalar>(max_m: usize, trials: usize, points: usize, seed: u64) -> (Output, bool) {
    let mut cases = Vec::new();
    for m in 2..=max_m as i64 {
        for m_minus in 0..=m {
            for k_level in 1..m as usize {
                for n in 0..=m as usize - k_level {
                    cases.push((m_minus, m - m_minus, k_level, n));
                }
            }
        }
    }
    let mut out = Output::new(&["m_minus", "m_plus", "K_s", "n", "trials", "status", "max_discrepancy", "detail"]);
    let mut all_pass = true;
    for (i, (mm, mp, k_level, n)) in cases.into_iter().enumerate() {
        let r: VerificationReport<T> = verify_family(mm, mp, k_level, n, trials, points, seed.wrapping_add(i as u64));
        all_pass &= r.passed();
        out.records.push(r.to_json());
        out.rows.push(vec![
            mm.to_string(),
            mp.to_string(),
            k_level.to_string(),
            n.to_string(),
            trials.to_string(),
            if r.passed() { "pass" } else { "fail" }.to_string(),
            r.max_discrepancy.to_string(),
            r.detail.clone(),
        ]);
    }
    (out, all_pass)
}
