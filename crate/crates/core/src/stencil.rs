//! Stencils of ordered nodes and their Neville substencils.
//!
//! Nodes are addressed by their offset `ℓ ∈ {-M-, …, M+}` relative to an
//! implicit origin index. Substencils keep the offsets of their parent, so
//! a sample indexed by offset is valid on every substencil.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{range_err, Error, Result};
use crate::scalar::Scalar;

/// The node set `{x_{i-M-}, …, x_{i+M+}}`, strictly increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct Stencil<T> {
    m_minus: i64,
    m_plus: i64,
    nodes: Vec<T>,
}

/// A level-`K_s` subdivision and the `k_s`-th window within it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubdivisionSpec {
    pub k_level: usize,
    pub shift: usize,
}

impl SubdivisionSpec {
    pub fn new(k_level: usize, shift: usize) -> Self {
        SubdivisionSpec { k_level, shift }
    }
}

impl<T: Scalar> Stencil<T> {
    pub fn new(m_minus: i64, m_plus: i64, nodes: Vec<T>) -> Result<Self> {
        let m = m_minus + m_plus;
        if m < 0 {
            return range_err(format!("M = M- + M+ = {m} must be nonnegative"));
        }
        if nodes.len() as i64 != m + 1 {
            return Err(Error::Arity(format!(
                "stencil with arms ({m_minus}, {m_plus}) needs {} nodes, got {}",
                m + 1,
                nodes.len()
            )));
        }
        if let Some(j) = nodes.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::Order { offset: j as i64 + 1 - m_minus });
        }
        Ok(Stencil { m_minus, m_plus, nodes })
    }

    /// Evenly spaced nodes `x_{i+ℓ} = origin + ℓ h`.
    pub fn uniform(m_minus: i64, m_plus: i64, origin: T, h: T) -> Result<Self> {
        let nodes = (-m_minus..=m_plus)
            .map(|l| origin.clone() + h.clone() * T::from_int(l))
            .collect();
        Self::new(m_minus, m_plus, nodes)
    }

    pub fn m_minus(&self) -> i64 {
        self.m_minus
    }

    pub fn m_plus(&self) -> i64 {
        self.m_plus
    }

    /// `M = M- + M+`; the stencil holds `M + 1` nodes.
    pub fn m(&self) -> usize {
        (self.m_minus + self.m_plus) as usize
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn offsets(&self) -> RangeInclusive<i64> {
        -self.m_minus..=self.m_plus
    }

    pub fn contains_offset(&self, ell: i64) -> bool {
        self.offsets().contains(&ell)
    }

    pub fn get(&self, ell: i64) -> Option<&T> {
        if self.contains_offset(ell) {
            Some(&self.nodes[(ell + self.m_minus) as usize])
        } else {
            None
        }
    }

    /// `x_{i+ℓ}`. Panics when `ℓ` is outside the stencil.
    pub fn node(&self, ell: i64) -> &T {
        self.get(ell)
            .unwrap_or_else(|| panic!("offset {ell} outside stencil {:?}", self.offsets()))
    }

    pub fn first(&self) -> &T {
        &self.nodes[0]
    }

    pub fn last(&self) -> &T {
        &self.nodes[self.nodes.len() - 1]
    }

    /// Sub-window of consecutive nodes, by position `lo..=hi` in `0..=M`.
    pub(crate) fn window(&self, lo: usize, hi: usize) -> Stencil<T> {
        debug_assert!(lo <= hi && hi <= self.m());
        Stencil {
            m_minus: self.m_minus - lo as i64,
            m_plus: hi as i64 - self.m_minus,
            nodes: self.nodes[lo..=hi].to_vec(),
        }
    }

    /// Node positions (in `0..=M`) spanned by substencil `k_s` of level `K_s`.
    pub(crate) fn window_bounds(&self, spec: SubdivisionSpec) -> Result<(usize, usize)> {
        self.check_level(spec.k_level)?;
        if spec.shift > spec.k_level {
            return range_err(format!("k_s = {} not in 0..={}", spec.shift, spec.k_level));
        }
        let m = self.m();
        Ok((spec.shift, m - spec.k_level + spec.shift))
    }

    /// Requires `1 <= K_s <= M - 1`.
    pub(crate) fn check_level(&self, k_level: usize) -> Result<()> {
        let m = self.m();
        if m < 2 {
            return range_err(format!("subdivision needs M >= 2, stencil has M = {m}"));
        }
        if k_level < 1 || k_level > m - 1 {
            return range_err(format!("K_s = {k_level} not in 1..={}", m - 1));
        }
        Ok(())
    }

    /// `{x_{i-M-+k_s}, …, x_{i+M+-K_s+k_s}}` with arms `(M- - k_s, M+ - K_s + k_s)`.
    pub fn substencil(&self, spec: SubdivisionSpec) -> Result<Stencil<T>> {
        let (lo, hi) = self.window_bounds(spec)?;
        Ok(self.window(lo, hi))
    }

    /// All `K_s + 1` substencils of level `K_s`, ordered by `k_s`.
    pub fn substencils(&self, k_level: usize) -> Result<Vec<Stencil<T>>> {
        (0..=k_level)
            .map(|k| self.substencil(SubdivisionSpec::new(k_level, k)))
            .collect()
    }

    /// Whether the level-`K_s` substencils cover the stencil exactly.
    /// `false` for an inadmissible level.
    pub fn substencil_union_check(&self, k_level: usize) -> bool {
        let Ok(subs) = self.substencils(k_level) else {
            return false;
        };
        let mut covered = BTreeSet::new();
        for sub in &subs {
            for ell in sub.offsets() {
                if sub.node(ell) != self.node(ell) {
                    return false;
                }
                covered.insert(ell);
            }
        }
        covered.into_iter().eq(self.offsets())
    }

    pub fn to_descriptor(&self) -> StencilDescriptor {
        StencilDescriptor {
            m_minus: self.m_minus,
            m_plus: self.m_plus,
            nodes: self.nodes.iter().map(Scalar::to_json).collect(),
        }
    }

    pub fn from_descriptor(d: &StencilDescriptor) -> Result<Self> {
        let nodes = d.nodes.iter().map(T::from_json).collect::<Result<Vec<_>>>()?;
        Self::new(d.m_minus, d.m_plus, nodes)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let d: StencilDescriptor =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("stencil descriptor: {e}")))?;
        Self::from_descriptor(&d)
    }

    /// Converts node coordinates to another scalar field through `f64`
    /// (exact for rationals built from `f64` values).
    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Result<Stencil<U>> {
        Stencil::new(self.m_minus, self.m_plus, self.nodes.iter().map(f).collect())
    }
}

/// JSON stencil descriptor: `{"m_minus": 1, "m_plus": 1, "nodes": ["-1", "0", "1/2"]}`.
///
/// Nodes may be rational strings or JSON numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StencilDescriptor {
    pub m_minus: i64,
    pub m_plus: i64,
    pub nodes: Vec<Value>,
}
