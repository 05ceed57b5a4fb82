//! Exact dimension sequences.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexKind {
    Arity,
    Weight,
    Degree,
    Height,
}

impl IndexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IndexKind::Arity => "arity",
            IndexKind::Weight => "weight",
            IndexKind::Degree => "degree",
            IndexKind::Height => "height",
        }
    }
}

/// `values[n]` for `n = 0..=truncation`.
///
/// `exact` is false when the counts are only lower bounds (arity-indexed
/// counts of an operad with unary generators, capped by weight).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimSeries {
    pub values: Vec<BigUint>,
    pub index_kind: IndexKind,
    pub exact: bool,
}

impl DimSeries {
    pub fn new(values: Vec<BigUint>, index_kind: IndexKind) -> Self {
        Self { values, index_kind, exact: true }
    }

    pub fn from_u64(values: &[u64], index_kind: IndexKind) -> Self {
        Self::new(values.iter().map(|&v| BigUint::from(v)).collect(), index_kind)
    }

    /// Largest index present.
    pub fn truncation(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> BigUint {
        self.values.get(n).cloned().unwrap_or_default()
    }

    pub fn partial_sums(&self) -> Vec<BigUint> {
        let mut acc = BigUint::zero();
        self.values
            .iter()
            .map(|v| {
                acc += v;
                acc.clone()
            })
            .collect()
    }

    /// Values as `u64`, or `None` if any overflows.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.values.iter().map(ToPrimitive::to_u64).collect()
    }

    pub fn truncated(&self, max_index: usize) -> Self {
        let mut out = self.clone();
        out.values.truncate(max_index + 1);
        out
    }
}

/// Natural log of a big unsigned integer, good to double precision.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
