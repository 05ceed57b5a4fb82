//! Empirical check of the growth dichotomy for finitely generated monomial
//! operads: a weight `d ≥ 3` with at most `d - 3` normal forms forces the
//! filtration dimensions `d_V(n)` to grow at most linearly.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{MonomialOperadPresentation, OperadError};
use crate::dims::{DimSeries, IndexKind};
use crate::stats::{least_squares, tail_start};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrowthClass {
    /// Weight counts vanish on the tail window.
    Bounded,
    /// A weight `d` with count `≤ d - 3` was found.
    Linear,
    /// Every weight count in the horizon is `≥ d - 2`.
    SuperlinearWitness,
}

impl GrowthClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GrowthClass::Bounded => "bounded",
            GrowthClass::Linear => "linear",
            GrowthClass::SuperlinearWitness => "superlinear_witness",
        }
    }
}

/// `d_V(n) ≈ a·n + b` fitted on the tail, and the first `n` where
/// `d_V(n) > a·n + b + max(5, 10%)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFit {
    pub a: f64,
    pub b: f64,
    pub window: (usize, usize),
    pub first_violation: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub criterion_d: Option<usize>,
    pub growth_class: GrowthClass,
    pub weight_counts: DimSeries,
    pub partial_sums: DimSeries,
    /// Present for the bounded and linear classes.
    pub fit: Option<AffineFit>,
}

pub const MIN_GAP_HORIZON: usize = 6;

pub fn gap_dichotomy_check(pres: &MonomialOperadPresentation, max_weight: usize) -> Result<GapReport, OperadError> {
    if max_weight < MIN_GAP_HORIZON {
        return Err(OperadError::HorizonTooShort { needed: MIN_GAP_HORIZON, got: max_weight });
    }
    let counts = pres.dim_by_weight(max_weight);
    let sums = DimSeries::new(counts.partial_sums(), IndexKind::Weight);
    let criterion_d = (3..=max_weight).find(|&d| counts.values[d] <= BigUint::from(d - 3));
    let start = tail_start(max_weight, 1.0 / 3.0);
    let tail_zero = counts.values[start..].iter().all(Zero::is_zero);
    let growth_class = match criterion_d {
        Some(_) if tail_zero => GrowthClass::Bounded,
        Some(_) => GrowthClass::Linear,
        None => GrowthClass::SuperlinearWitness,
    };
    let fit = criterion_d.map(|_| affine_fit(&sums.values, start, max_weight));
    Ok(GapReport { criterion_d, growth_class, weight_counts: counts, partial_sums: sums, fit })
}

fn affine_fit(sums: &[BigUint], start: usize, end: usize) -> AffineFit {
    let as_f = |v: &BigUint| v.to_f64().unwrap_or(f64::INFINITY);
    let xs: Vec<f64> = (start..=end).map(|n| n as f64).collect();
    let ys: Vec<f64> = (start..=end).map(|n| as_f(&sums[n])).collect();
    let (a, b) = least_squares(&xs, &ys).unwrap_or((0.0, ys.last().copied().unwrap_or(0.0)));
    let first_violation = (0..=end).find(|&n| {
        let line = a * n as f64 + b;
        as_f(&sums[n]) > line + (0.1 * line.abs()).max(5.0)
    });
    AffineFit { a, b, window: (start, end), first_violation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Alphabet;

    fn pres(rels: &[&str]) -> MonomialOperadPresentation {
        let a = Alphabet::new([("a", 2)]).unwrap();
        let r: Vec<_> = rels.iter().map(|s| a.parse_monomial(s).unwrap()).collect();
        MonomialOperadPresentation::new(a, r, None).unwrap()
    }

    #[test]
    fn three_relation_presentation_is_linear_with_d5() {
        let p = pres(&["a(a(*,*),a(*,*))", "a(*,a(a(*,*),*))", "a(*,a(*,a(*,*)))"]);
        let r = gap_dichotomy_check(&p, 30).unwrap();
        assert_eq!(r.criterion_d, Some(5));
        assert_eq!(r.growth_class, GrowthClass::Linear);
        let fit = r.fit.unwrap();
        assert!(fit.first_violation.is_none());
        assert!((fit.a - 2.0).abs() < 1e-9);
    }

    #[test]
    fn free_is_superlinear_and_weight_two_is_bounded() {
        let free = MonomialOperadPresentation::free(Alphabet::new([("a", 2)]).unwrap());
        let r = gap_dichotomy_check(&free, 12).unwrap();
        assert_eq!(r.growth_class, GrowthClass::SuperlinearWitness);
        assert_eq!(r.criterion_d, None);
        assert!(r.fit.is_none());

        let b = gap_dichotomy_check(&pres(&["a(a(*,*),*)", "a(*,a(*,*))"]), 10).unwrap();
        assert_eq!(b.criterion_d, Some(3));
        assert_eq!(b.growth_class, GrowthClass::Bounded);
        assert!(gap_dichotomy_check(&free, 5).is_err());
    }
}
