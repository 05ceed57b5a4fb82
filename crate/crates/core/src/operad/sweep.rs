//! Exhaustive sweep over single-generator presentations: one binary
//! generator, relations drawn from the monomials of weight `2..=W`.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{enumerate_irr, gap_dichotomy_check, Engine, GapReport, GrowthClass, MonomialOperadPresentation};
use crate::stats::{log_log_slope, tail_start};
use crate::tree::{Alphabet, TreeMonomial};

/// Open interval of tail exponents the dichotomy forbids.
pub const FORBIDDEN_EXPONENTS: (f64, f64) = (1.1, 1.9);

/// Every tree monomial of weight `w` over one binary generator `a`, in the
/// deglex path order.
pub fn binary_monomials(w: usize) -> Vec<TreeMonomial> {
    let free = MonomialOperadPresentation::free(binary_alphabet());
    enumerate_irr(&free, w).last().unwrap_or_default()
}

pub fn binary_alphabet() -> Alphabet {
    Alphabet::new([("a", 2)]).expect("static alphabet")
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    /// Bit `i` set iff candidate relation `i` is included.
    pub key: u64,
    pub relations: Vec<String>,
    pub criterion_d: Option<usize>,
    pub growth_class: GrowthClass,
    /// Slope of `ln Σ_{i≤n} dim P(i)` against `ln n` over the tail third of
    /// the arity window; `None` when the partial sums are too sparse.
    pub tail_exponent: Option<f64>,
    pub report: GapReport,
    pub arity_dims: Vec<BigUint>,
}

#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub max_relation_weight: usize,
    pub horizon: usize,
    pub candidates: Vec<String>,
    pub rows: Vec<SweepRow>,
}

impl SweepSummary {
    /// Rows whose tail exponent falls strictly inside the forbidden interval.
    pub fn intermediate_rows(&self) -> Vec<&SweepRow> {
        self.rows
            .iter()
            .filter(|r| r.tail_exponent.is_some_and(|e| e > FORBIDDEN_EXPONENTS.0 && e < FORBIDDEN_EXPONENTS.1))
            .collect()
    }

    /// No intermediate exponent, and every linear row carries a criterion.
    pub fn dichotomy_holds(&self) -> bool {
        self.intermediate_rows().is_empty()
            && self.rows.iter().all(|r| r.growth_class != GrowthClass::Linear || r.criterion_d.is_some())
    }
}

/// Runs every subset of the weight `2..=max_relation_weight` monomials over
/// one binary generator, with weights up to `horizon`. Rows are computed in
/// parallel and returned ordered by key.
pub fn sweep(max_relation_weight: usize, horizon: usize) -> Result<SweepSummary, super::OperadError> {
    let alphabet = binary_alphabet();
    let candidates: Vec<TreeMonomial> = (2..=max_relation_weight).flat_map(binary_monomials).collect();
    assert!(candidates.len() < 64, "too many candidate relations for a bitmask key");
    let names: Vec<String> = candidates.iter().map(|t| alphabet.format_monomial(t)).collect();
    let total = 1u64 << candidates.len();
    let rows: Result<Vec<SweepRow>, super::OperadError> = (0..total)
        .into_par_iter()
        .map(|key| {
            let chosen: Vec<TreeMonomial> =
                candidates.iter().enumerate().filter(|(i, _)| key >> i & 1 == 1).map(|(_, t)| t.clone()).collect();
            let relations = chosen.iter().map(|t| alphabet.format_monomial(t)).collect();
            let pres = MonomialOperadPresentation::new(alphabet.clone(), chosen, None)?;
            let report = gap_dichotomy_check(&pres, horizon)?;
            let max_arity = horizon + 1;
            let dims = pres.dim_by_arity(max_arity, Engine::ProfileDp, None)?;
            let sums = dims.partial_sums();
            let tail_exponent = log_log_slope(&sums, tail_start(max_arity, 1.0 / 3.0), max_arity);
            Ok::<_, super::OperadError>(SweepRow {
                key,
                relations,
                criterion_d: report.criterion_d,
                growth_class: report.growth_class,
                tail_exponent,
                report,
                arity_dims: dims.values,
            })
        })
        .collect();
    Ok(SweepSummary { max_relation_weight, horizon, candidates: names, rows: rows? })
}
