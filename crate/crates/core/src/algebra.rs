//! Connected graded monomial algebras and closed-form Hilbert series.
//!
//! A monomial algebra `F⟨X⟩/(forbidden words)` has the words avoiding every
//! forbidden factor as a basis, so its Hilbert series is a factor-avoidance
//! count.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{binomial, floor_rational_power, floor_rational_power_u64, parse_decimal, ArithError};
use crate::automaton::{self_reduce_words, FactorAutomaton};
use crate::dims::{DimSeries, IndexKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("forbidden words must have length at least 2 (got {0:?})")]
    ShortForbidden(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialAlgebraPresentation {
    variables: Vec<String>,
    forbidden: Vec<Vec<usize>>,
}

impl MonomialAlgebraPresentation {
    /// Self-reduces the forbidden set (drops duplicates and words with a
    /// forbidden proper factor).
    pub fn new(variables: Vec<String>, forbidden: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        if variables.is_empty() {
            return Err(AlgebraError::OutOfRange("at least one variable is required".into()));
        }
        for w in &forbidden {
            if w.len() < 2 {
                return Err(AlgebraError::ShortForbidden(format!("{w:?}")));
            }
            if let Some(&bad) = w.iter().find(|&&v| v >= variables.len()) {
                return Err(AlgebraError::OutOfRange(format!("variable index {bad}")));
            }
        }
        Ok(Self { variables, forbidden: self_reduce_words(forbidden) })
    }

    /// Variables `x1..xd`.
    pub fn numbered(d: usize, forbidden: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        Self::new((1..=d).map(|i| format!("x{i}")).collect(), forbidden)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn forbidden(&self) -> &[Vec<usize>] {
        &self.forbidden
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        w.iter().map(|&v| self.variables[v].as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Parses `var <id>` lines then `forbid <word>` lines. A word is a list
    /// of variable ids separated by spaces; when every id is one character,
    /// juxtaposition (`forbid xyx`) is accepted too.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut vars: Vec<String> = Vec::new();
        let mut words: Vec<(usize, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match kw {
                "var" => {
                    if rest.is_empty() || rest.contains(char::is_whitespace) || vars.iter().any(|v| v == rest) {
                        return Err(AlgebraError::Parse { line: line_no, msg: format!("bad variable {rest:?}") });
                    }
                    vars.push(rest.to_string());
                }
                "forbid" => words.push((line_no, rest.to_string())),
                other => return Err(AlgebraError::Parse { line: line_no, msg: format!("unknown keyword {other:?}") }),
            }
        }
        let single_char = vars.iter().all(|v| v.chars().count() == 1);
        let mut forbidden = Vec::new();
        for (line, text) in words {
            let lookup = |id: &str| {
                vars.iter()
                    .position(|v| v == id)
                    .ok_or_else(|| AlgebraError::Parse { line, msg: format!("unknown variable {id:?}") })
            };
            let tokens: Vec<&str> = text.split_whitespace().collect();
            let word: Vec<usize> = if tokens.len() == 1 && single_char && lookup(tokens[0]).is_err() {
                tokens[0].chars().map(|c| lookup(&c.to_string())).collect::<Result<_, _>>()?
            } else {
                tokens.iter().map(|t| lookup(t)).collect::<Result<_, _>>()?
            };
            if word.len() < 2 {
                return Err(AlgebraError::Parse { line, msg: "forbidden words need length >= 2".into() });
            }
            forbidden.push(word);
        }
        Self::new(vars, forbidden)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.variables {
            out.push_str(&format!("var {v}\n"));
        }
        for w in &self.forbidden {
            out.push_str(&format!("forbid {}\n", self.format_word(w)));
        }
        out
    }

    /// `values[n]` = number of words of length `n` avoiding every forbidden
    /// factor.
    pub fn hilbert_dims(&self, max_degree: usize) -> DimSeries {
        let aut = FactorAutomaton::new(self.variables.len(), &self.forbidden);
        DimSeries::new(aut.count_avoiding(max_degree), IndexKind::Degree)
    }
}

/// Algebras whose Hilbert series has a closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedFormSeries {
    PolynomialRing(usize),
    FreeAlgebra(usize),
    Warfield(BigRational),
    Example62,
    Partition,
    FloorPower(BigRational),
}

impl ClosedFormSeries {
    pub fn dims(&self, max_index: usize) -> Result<DimSeries, AlgebraError> {
        match self {
            ClosedFormSeries::PolynomialRing(d) => Ok(polynomial_ring_dims(*d, max_index)),
            ClosedFormSeries::FreeAlgebra(d) => Ok(free_algebra_dims(*d, max_index)),
            ClosedFormSeries::Warfield(r) => warfield_dims(r, max_index),
            ClosedFormSeries::Example62 => example62_dims(max_index),
            ClosedFormSeries::Partition => Ok(partition_dims(max_index)),
            ClosedFormSeries::FloorPower(a) => floor_power_dims(a, max_index),
        }
    }
}

/// `dim F[x_1..x_d]_n = C(n + d - 1, d - 1)`.
pub fn polynomial_ring_dims(d: usize, max_degree: usize) -> DimSeries {
    let values = (0..=max_degree as u64)
        .map(|n| if d == 0 { BigUint::from((n == 0) as u32) } else { binomial(n + d as u64 - 1, d as u64 - 1) })
        .collect();
    DimSeries::new(values, IndexKind::Degree)
}

/// `dim F⟨x_1..x_d⟩_n = d^n`.
pub fn free_algebra_dims(d: usize, max_degree: usize) -> DimSeries {
    let mut cur = BigUint::one();
    let mut values = Vec::with_capacity(max_degree + 1);
    for _ in 0..=max_degree {
        values.push(cur.clone());
        cur *= d;
    }
    DimSeries::new(values, IndexKind::Degree)
}

fn warfield_q(r: &BigRational) -> Result<BigRational, AlgebraError> {
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    if r <= &two || r >= &three {
        return Err(AlgebraError::OutOfRange(format!("warfield parameter r = {r} must lie in (2, 3)")));
    }
    Ok((r - BigRational::one()) / two)
}

/// `dim A_n = 1 + n + ½(⌊n^q⌋ - 1)⌊n^q⌋` for `n ≥ 2`, `q = (r - 1)/2`.
pub fn warfield_dims(r: &BigRational, max_degree: usize) -> Result<DimSeries, AlgebraError> {
    let q = warfield_q(r)?;
    let mut values = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree as u64 {
        let v = match n {
            0 => BigUint::one(),
            1 => BigUint::from(2u32),
            _ => {
                let f = floor_rational_power(n, &q)?;
                let tri = (&f * (&f - 1u32)) >> 1u32;
                BigUint::from(1 + n) + tri
            }
        };
        values.push(v);
    }
    Ok(DimSeries::new(values, IndexKind::Degree))
}

/// The forbidden-pattern algebra behind [`warfield_dims`], truncated at
/// `max_degree`: on `x1, x2`, forbid words of `x2`-degree 3 and
/// `x1^i x2 x1^j x2 x1^l` with `j < n - ⌊n^q⌋`, `n = i + j + l + 2`.
pub fn warfield_model(r: &BigRational, max_degree: usize) -> Result<MonomialAlgebraPresentation, AlgebraError> {
    let q = warfield_q(r)?;
    let (x1, x2) = (0usize, 1usize);
    let mut forbidden = Vec::new();
    for len in 3..=max_degree {
        for a in 0..=len - 3 {
            let b = len - 3 - a;
            let mut w = vec![x2];
            w.extend(std::iter::repeat_n(x1, a));
            w.push(x2);
            w.extend(std::iter::repeat_n(x1, b));
            w.push(x2);
            forbidden.push(w);
        }
    }
    for n in 2..=max_degree {
        let bound = n as i64 - floor_rational_power_u64(n as u64, &q)? as i64;
        for j in 0..(n - 1) {
            if (j as i64) >= bound {
                continue;
            }
            let rest = n - 2 - j;
            for i in 0..=rest {
                let l = rest - i;
                let mut w = vec![x1; i];
                w.push(x2);
                w.extend(std::iter::repeat_n(x1, j));
                w.push(x2);
                w.extend(std::iter::repeat_n(x1, l));
                forbidden.push(w);
            }
        }
    }
    MonomialAlgebraPresentation::numbered(2, forbidden)
}

/// Lower and upper ends of the `m`-th interval of `Λ`:
/// `[(2m+1)^{2m+1} + 1, (2m+2)^{2m+2} + 1]`. `None` once they overflow.
pub fn lambda_interval(m: u32) -> Option<(u128, u128)> {
    let a = (2 * m + 1) as u128;
    let b = (2 * m + 2) as u128;
    let lo = a.checked_pow(2 * m + 1)?.checked_add(1)?;
    let hi = b.checked_pow(2 * m + 2)?.checked_add(1)?;
    Some((lo, hi))
}

pub fn in_lambda(n: u64) -> bool {
    let n = n as u128;
    for m in 0.. {
        match lambda_interval(m) {
            Some((lo, hi)) if lo <= n => {
                if n <= hi {
                    return true;
                }
            }
            _ => return false,
        }
    }
    false
}

/// `δ_Λ(n)`: 0 on `Λ`, 1 off it.
pub fn delta_lambda(n: u64) -> u32 {
    u32::from(!in_lambda(n))
}

/// `1, 2, 3 + δ_Λ(n), ...`.
pub fn example62_dims(max_degree: usize) -> Result<DimSeries, AlgebraError> {
    if max_degree < 2 {
        return Err(AlgebraError::OutOfRange(format!("max degree {max_degree} < 2")));
    }
    let values = (0..=max_degree as u64)
        .map(|n| match n {
            0 => BigUint::one(),
            1 => BigUint::from(2u32),
            _ => BigUint::from(3 + delta_lambda(n)),
        })
        .collect();
    Ok(DimSeries::new(values, IndexKind::Degree))
}

/// The monomial algebra `U` truncated at `max_degree`: on `x1, x2`, forbid
/// (a) `x2`-degree 3, (b) `x1 x2 x1`, (c) `x2 x1^i x2` for `i` in the
/// intervals `[(2m+1)^{2m+1} - 1, (2m+2)^{2m+2} - 1]`.
pub fn example62_model(max_degree: usize) -> Result<MonomialAlgebraPresentation, AlgebraError> {
    let (x1, x2) = (0usize, 1usize);
    let mut forbidden = vec![vec![x1, x2, x1]];
    for len in 3..=max_degree {
        for a in 0..=len - 3 {
            let mut w = vec![x2];
            w.extend(std::iter::repeat_n(x1, a));
            w.push(x2);
            w.extend(std::iter::repeat_n(x1, len - 3 - a));
            w.push(x2);
            forbidden.push(w);
        }
    }
    for i in 0..=max_degree.saturating_sub(2) {
        let i128v = i as u128;
        let hit = (0..)
            .map_while(lambda_interval)
            .take_while(|&(lo, _)| lo <= i128v + 2)
            .any(|(lo, hi)| lo - 2 <= i128v && i128v <= hi - 2);
        if hit {
            let mut w = vec![x2];
            w.extend(std::iter::repeat_n(x1, i));
            w.push(x2);
            forbidden.push(w);
        }
    }
    MonomialAlgebraPresentation::numbered(2, forbidden)
}

/// Partition numbers `p(0..=N)` by dynamic programming over parts.
pub fn partition_dims(max_degree: usize) -> DimSeries {
    let mut p = vec![BigUint::zero(); max_degree + 1];
    p[0] = BigUint::one();
    for part in 1..=max_degree {
        for n in part..=max_degree {
            let add = p[n - part].clone();
            p[n] += add;
        }
    }
    DimSeries::new(p, IndexKind::Degree)
}

/// `0, 1, ⌊n^α⌋ - ⌊(n-1)^α⌋ ...`: the generators of a floor-power operad
/// plus the identity in arity 1. Partial sums are `⌊n^α⌋` for `n ≥ 1`.
pub fn floor_power_dims(alpha: &BigRational, max_index: usize) -> Result<DimSeries, AlgebraError> {
    let mut values = Vec::with_capacity(max_index + 1);
    let mut prev = BigUint::one();
    for n in 0..=max_index as u64 {
        let v = match n {
            0 => BigUint::zero(),
            1 => BigUint::one(),
            _ => {
                let cur = floor_rational_power(n, alpha)?;
                let d = &cur - &prev;
                prev = cur;
                d
            }
        };
        values.push(v);
    }
    Ok(DimSeries::new(values, IndexKind::Arity))
}

/// Multiplies the series by `1/(1-z)^n`, keeping the truncation.
pub fn adjoin_polynomial_variables(dims: &DimSeries, n: usize) -> DimSeries {
    let mut values = dims.values.clone();
    for _ in 0..n {
        let mut acc = BigUint::zero();
        for v in values.iter_mut() {
            acc += &*v;
            *v = acc.clone();
        }
    }
    let mut out = DimSeries::new(values, dims.index_kind);
    out.exact = dims.exact;
    out
}

/// Parses a real parameter given as a decimal or a fraction.
pub fn parse_parameter(s: &str) -> Result<BigRational, AlgebraError> {
    Ok(parse_decimal(s)?)
}

/// Convenience for tests and reports.
pub fn dims_u64(d: &DimSeries) -> Vec<u64> {
    d.values.iter().map(|v| v.to_u64().unwrap_or(u64::MAX)).collect()
}
