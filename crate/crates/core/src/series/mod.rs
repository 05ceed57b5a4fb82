//! Generating series analysis: GK-dimension estimates, rational fitting,
//! holonomic recurrence guessing, and zero-run reports.
//!
//! All fitting is exact. Floating point appears only in the growth
//! estimates of [`gk_estimate`], which are labelled as estimates.

pub mod linalg;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::dims::{ln_big, DimSeries};
use crate::stats::{log_log_slope, tail_start};

/// Coefficients at the end of a window that no fit ever sees.
pub const HOLDOUT: usize = 20;

/// Default tail fraction for slope fits.
pub const DEFAULT_TAIL_FRACTION: f64 = 1.0 / 3.0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("degenerate series: every coefficient at index >= 2 is zero")]
    Degenerate,
    #[error("window too short: need truncation N >= {needed}, got {got}")]
    WindowTooShort { needed: usize, got: usize },
    #[error("coefficient {index} is negative; dimension data must be nonnegative")]
    Negative { index: usize },
    #[error("series is empty")]
    Empty,
}

/// Exact coefficients `c_0..=c_N`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SeriesWindow {
    pub coefficients: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn q_big(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

impl SeriesWindow {
    pub fn new(coefficients: Vec<BigRational>) -> Self {
        Self { coefficients }
    }

    pub fn from_dims(d: &DimSeries) -> Self {
        Self::new(d.values.iter().map(q_big).collect())
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| q(v)).collect())
    }

    /// `N`, the largest index present.
    pub fn truncation(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn get(&self, n: usize) -> BigRational {
        self.coefficients.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncated(&self, max_index: usize) -> Self {
        Self::new(self.coefficients.iter().take(max_index + 1).cloned().collect())
    }

    /// Multiplies by `z^k`, keeping the truncation.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.len();
        let mut c = vec![BigRational::zero(); k.min(n)];
        c.extend(self.coefficients.iter().take(n.saturating_sub(k)).cloned());
        Self::new(c)
    }

    /// Multiplies by `z^k` and extends the truncation by `k`.
    pub fn shift_extend(&self, k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k];
        c.extend(self.coefficients.iter().cloned());
        Self::new(c)
    }

    /// The Euler operator `z·d/dz`: `c_n ↦ n·c_n`.
    pub fn euler(&self) -> Self {
        Self::new(self.coefficients.iter().enumerate().map(|(n, c)| c * q(n as i64)).collect())
    }

    /// Coefficientwise sum over the shorter truncation.
    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect())
    }

    /// Cauchy product over the shorter truncation.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.len().min(other.len());
        let mut c = vec![BigRational::zero(); n];
        for (i, a) in self.coefficients.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().take(n - i).enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    /// Partial sums `S(n) = c_0 + ⋯ + c_n`.
    pub fn partial_sums(&self) -> Vec<BigRational> {
        let mut acc = BigRational::zero();
        self.coefficients
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect()
    }

    /// Coefficients as nonnegative integers, if they all are.
    pub fn to_dims(&self) -> Option<Vec<BigUint>> {
        self.coefficients
            .iter()
            .map(|c| if c.is_integer() && !c.is_negative() { c.numer().to_biguint() } else { None })
            .collect()
    }
}

/// `c_n ↦ c_n / n!`.
pub fn exponential_transform(s: &SeriesWindow) -> SeriesWindow {
    let mut fact = BigInt::one();
    let mut out = Vec::with_capacity(s.len());
    for (n, c) in s.coefficients.iter().enumerate() {
        if n > 0 {
            fact *= n;
        }
        out.push(c / BigRational::from_integer(fact.clone()));
    }
    SeriesWindow::new(out)
}

/// Formats `Σ c_k z^k` with exact coefficients, lowest degree first.
pub fn format_polynomial(coeffs: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Power series expansion of `num/den` up to `z^max_index`; `den[0]` must
/// be nonzero.
pub fn expand_rational(num: &[BigRational], den: &[BigRational], max_index: usize) -> Vec<BigRational> {
    let inv0 = den[0].recip();
    let mut out: Vec<BigRational> = Vec::with_capacity(max_index + 1);
    for n in 0..=max_index {
        let mut acc = num.get(n).cloned().unwrap_or_else(BigRational::zero);
        for (i, d) in den.iter().enumerate().skip(1).take(n) {
            acc -= d * &out[n - i];
        }
        out.push(acc * &inv0);
    }
    out
}

// ---------------------------------------------------------------------------
// GK estimates

/// Growth estimates for `S(n) = Σ_{i≤n} dim P(i)`. Every float here is an
/// estimate over a finite window, never a certified value.
#[derive(Debug, Clone, PartialEq)]
pub struct GkReport {
    pub truncation: usize,
    pub window: (usize, usize),
    /// `ln S(N) / ln N`.
    pub pointwise: f64,
    /// Least-squares slope of `ln S(n)` against `ln n` on the window.
    pub slope: Option<f64>,
    /// Maximum of `ln S(n)/ln n` over the window.
    pub limsup: f64,
    /// Set when the doubling ratios `S(2n)/S(n)` are still growing.
    pub exp_flag: bool,
}

/// `log2(S(2n)/S(n))`.
fn doubling_exponent(sums: &[BigUint], n: usize) -> Option<f64> {
    let (a, b) = (sums.get(2 * n)?, sums.get(n)?);
    if a.is_zero() || b.is_zero() {
        return None;
    }
    Some((ln_big(a) - ln_big(b)) / std::f64::consts::LN_2)
}

pub fn gk_estimate(dims: &DimSeries, tail_fraction: f64) -> Result<GkReport, SeriesError> {
    let n_max = dims.truncation();
    if dims.is_empty() {
        return Err(SeriesError::Empty);
    }
    if n_max < 4 {
        return Err(SeriesError::WindowTooShort { needed: 4, got: n_max });
    }
    if dims.values[2..].iter().all(Zero::is_zero) {
        return Err(SeriesError::Degenerate);
    }
    let sums = dims.partial_sums();
    let from = tail_start(n_max, tail_fraction).max(2);
    let ratio = |n: usize| ln_big(&sums[n]) / (n as f64).ln();
    let pointwise = ratio(n_max);
    let limsup = (from..=n_max).filter(|&n| !sums[n].is_zero()).map(ratio).fold(f64::NEG_INFINITY, f64::max);
    let slope = log_log_slope(&sums, from, n_max);
    let exp_flag = match (doubling_exponent(&sums, n_max / 4), doubling_exponent(&sums, n_max / 2)) {
        (Some(s4), Some(s2)) if n_max / 4 >= 1 => s2 > 1.25 * s4 && s2 > 6.0,
        _ => false,
    };
    Ok(GkReport { truncation: n_max, window: (from, n_max), pointwise, slope, limsup, exp_flag })
}

// ---------------------------------------------------------------------------
// Rational fitting

/// `numerator / denominator` with `denominator[0] = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFit {
    pub numerator: Vec<BigRational>,
    pub denominator: Vec<BigRational>,
    pub truncation: usize,
    /// Number of leading coefficients used by the fit.
    pub fit_len: usize,
    pub holdout_verified: bool,
}

impl RationalFit {
    /// Same rational function as `num/den`, checked by cross-multiplication.
    pub fn equals(&self, num: &[BigRational], den: &[BigRational]) -> bool {
        let a = poly_mul(&self.numerator, den);
        let b = poly_mul(num, &self.denominator);
        trim(a) == trim(b)
    }
}

impl fmt::Display for RationalFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", format_polynomial(&self.numerator, "z"), format_polynomial(&self.denominator, "z"))
    }
}

pub fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// Berlekamp–Massey over `Q`: the shortest connection polynomial `C` with
/// `C[0] = 1` and `Σ_{i≤L} C[i]·s[n-i] = 0` for `L ≤ n < len`.
pub fn berlekamp_massey(s: &[BigRational]) -> (Vec<BigRational>, usize) {
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &last;
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(c.len().max(l + 1), BigRational::zero());
    (c, l)
}

/// Finds the rational function of least complexity matching the window,
/// fitting on all but the last [`HOLDOUT`] coefficients and verifying on
/// every coefficient. `None` means no rational function was found.
pub fn fit_rational(s: &SeriesWindow) -> Option<RationalFit> {
    let total = s.len();
    if total < HOLDOUT + 4 {
        return None;
    }
    let fit_len = total - HOLDOUT;
    let data = &s.coefficients[..fit_len];
    let (c, l) = berlekamp_massey(data);
    if 2 * l >= fit_len {
        return None;
    }
    let mut num = poly_mul(&c, data);
    num.truncate(l);
    let numerator = trim(num);
    let denominator = trim(c);
    let expansion = expand_rational(&numerator, &denominator, s.truncation());
    if expansion != s.coefficients {
        return None;
    }
    Some(RationalFit { numerator, denominator, truncation: s.truncation(), fit_len, holdout_verified: true })
}

// ---------------------------------------------------------------------------
// Holonomic guessing

/// `Σ_{i=0}^{R} p_i(n)·c_{n-i} = 0`, with `p_i(n) = Σ_k coefficients[i][k]·n^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceCandidate {
    pub order: usize,
    pub degree: usize,
    pub coefficients: Vec<Vec<BigRational>>,
    /// Inclusive range of `n` used for fitting.
    pub fit_window: (usize, usize),
    /// Inclusive range of `n` used only for verification.
    pub holdout_window: (usize, usize),
    pub holdout_verified: bool,
}

impl RecurrenceCandidate {
    pub fn eval_poly(&self, i: usize, n: usize) -> BigRational {
        let x = q(n as i64);
        self.coefficients[i].iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Residual `Σ_i p_i(n)·c_{n-i}` at `n ≥ order`.
    pub fn residual(&self, s: &SeriesWindow, n: usize) -> BigRational {
        (0..=self.order).map(|i| self.eval_poly(i, n) * s.get(n - i)).sum()
    }

    /// Checks the recurrence at every `n` in `order..=N`.
    pub fn annihilates(&self, s: &SeriesWindow) -> bool {
        (self.order..s.len()).all(|n| self.residual(s, n).is_zero())
    }
}

impl fmt::Display for RecurrenceCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, p)| p.iter().any(|c| !c.is_zero()))
            .map(|(i, p)| {
                let c = if i == 0 { "c(n)".to_string() } else { format!("c(n-{i})") };
                format!("({})*{c}", format_polynomial(p, "n"))
            })
            .collect();
        write!(f, "{} = 0", terms.join(" + "))
    }
}

/// Smallest truncation accepted by [`guess_holonomic`] at these bounds.
pub fn holonomic_min_truncation(max_order: usize, max_degree: usize) -> usize {
    (max_order + 1) * (max_degree + 1) + max_order + HOLDOUT
}

fn try_recurrence(s: &SeriesWindow, r: usize, d: usize) -> Option<RecurrenceCandidate> {
    let n_max = s.truncation();
    let fit_end = n_max - HOLDOUT;
    if fit_end < r {
        return None;
    }
    let cols = (r + 1) * (d + 1);
    let row = |n: usize| -> Vec<BigRational> {
        let mut out = Vec::with_capacity(cols);
        for i in 0..=r {
            let c = s.get(n - i);
            let mut pow = BigRational::one();
            for _ in 0..=d {
                out.push(&c * &pow);
                pow *= q(n as i64);
            }
        }
        out
    };
    let rows: Vec<Vec<BigRational>> = (r..=fit_end).map(row).collect();
    let ints = linalg::integer_rows(&rows);
    let basis = linalg::nullspace(&ints, cols);
    let v = basis.into_iter().next()?;
    let coefficients: Vec<Vec<BigRational>> =
        v.chunks(d + 1).map(|ch| ch.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let cand = RecurrenceCandidate {
        order: r,
        degree: d,
        coefficients,
        fit_window: (r, fit_end),
        holdout_window: (fit_end + 1, n_max),
        holdout_verified: false,
    };
    let ok = (fit_end + 1..=n_max).all(|n| cand.residual(s, n).is_zero());
    ok.then_some(RecurrenceCandidate { holdout_verified: true, ..cand })
}

/// Searches orders `1..=max_order` and degrees `0..=max_degree` for a
/// recurrence with polynomial coefficients, smallest order first, then
/// smallest degree. `Ok(None)` means no recurrence exists at these bounds on
/// this window; it says nothing beyond them.
pub fn guess_holonomic(
    s: &SeriesWindow,
    max_order: usize,
    max_degree: usize,
) -> Result<Option<RecurrenceCandidate>, SeriesError> {
    let needed = holonomic_min_truncation(max_order, max_degree);
    if s.is_empty() || s.truncation() < needed {
        return Err(SeriesError::WindowTooShort { needed, got: s.truncation() });
    }
    let grid: Vec<(usize, usize)> = (1..=max_order).flat_map(|r| (0..=max_degree).map(move |d| (r, d))).collect();
    Ok(grid.par_iter().find_map_first(|&(r, d)| try_recurrence(s, r, d)))
}

// ---------------------------------------------------------------------------
// Zero runs

/// Maximal runs of zero coefficients. Finite windows cannot certify that
/// run lengths are unbounded, so `growing` is heuristic evidence only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroRunReport {
    /// Inclusive `[i_s, j_s]`, in index order.
    pub runs: Vec<(u64, u64)>,
    pub max_run: u64,
    /// Run lengths strictly increase across the last three complete runs.
    pub growing: bool,
    /// Number of coefficients inspected.
    pub window: u64,
}

impl ZeroRunReport {
    pub const LABEL: &'static str = "heuristic: a finite window cannot certify unbounded zero runs";

    /// Runs followed by a nonzero coefficient inside the window.
    pub fn complete_runs(&self) -> &[(u64, u64)] {
        match self.runs.last() {
            Some(&(_, j)) if j + 1 == self.window => &self.runs[..self.runs.len() - 1],
            _ => &self.runs,
        }
    }
}

/// Builds the report from a stream of is-zero flags, so windows far too
/// long to store can be scanned.
pub fn zero_runs<I: IntoIterator<Item = bool>>(is_zero: I) -> ZeroRunReport {
    let mut runs = Vec::new();
    let mut start: Option<u64> = None;
    let mut n = 0u64;
    for z in is_zero {
        match (z, start) {
            (true, None) => start = Some(n),
            (false, Some(i)) => {
                runs.push((i, n - 1));
                start = None;
            }
            _ => {}
        }
        n += 1;
    }
    if let Some(i) = start {
        runs.push((i, n - 1));
    }
    let max_run = runs.iter().map(|&(i, j)| j - i + 1).max().unwrap_or(0);
    let mut report = ZeroRunReport { runs, max_run, growing: false, window: n };
    let complete = report.complete_runs();
    report.growing = complete.len() >= 3 && {
        let lens: Vec<u64> = complete[complete.len() - 3..].iter().map(|&(i, j)| j - i + 1).collect();
        lens[0] < lens[1] && lens[1] < lens[2]
    };
    report
}

pub fn zero_run_report(s: &SeriesWindow) -> ZeroRunReport {
    zero_runs(s.coefficients.iter().map(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dims::IndexKind;

    fn qs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn fib(n: usize) -> Vec<i64> {
        let mut f = vec![0i64, 1];
        while f.len() <= n {
            let k = f.len();
            f.push(f[k - 1] + f[k - 2]);
        }
        f
    }

    #[test]
    fn berlekamp_massey_fibonacci() {
        let (c, l) = berlekamp_massey(&qs(&fib(20)));
        assert_eq!(l, 2);
        assert_eq!(trim(c), qs(&[1, -1, -1]));
    }

    #[test]
    fn rational_fit_with_polynomial_part() {
        let mut v = vec![0i64, 1];
        for n in 2..60 {
            v.push(1 << (n - 2));
        }
        let fit = fit_rational(&SeriesWindow::from_i64(&v)).unwrap();
        assert!(fit.equals(&qs(&[0, 1, -1]), &qs(&[1, -2])));
        assert_eq!(fit.to_string(), "(z - z^2) / (1 - 2*z)");
        assert!(fit_rational(&SeriesWindow::from_i64(&[1, 2, 3])).is_none());
    }

    #[test]
    fn non_rational_is_rejected() {
        let p = partition_like(80);
        assert!(fit_rational(&p).is_none());
    }

    fn partition_like(n: usize) -> SeriesWindow {
        SeriesWindow::from_dims(&crate::algebra::partition_dims(n))
    }

    #[test]
    fn fibonacci_recurrence() {
        let s = SeriesWindow::from_i64(&fib(60));
        let c = guess_holonomic(&s, 3, 2).unwrap().unwrap();
        assert_eq!((c.order, c.degree), (2, 0));
        assert!(c.annihilates(&s));
        assert!(c.holdout_verified);
    }

    #[test]
    fn short_window_is_an_error() {
        let s = SeriesWindow::from_i64(&fib(30));
        assert!(matches!(guess_holonomic(&s, 3, 3), Err(SeriesError::WindowTooShort { .. })));
    }

    #[test]
    fn exponential_transform_of_factorials() {
        let mut f = 1i64;
        let mut v = vec![1];
        for n in 1..15 {
            f *= n;
            v.push(f);
        }
        let e = exponential_transform(&SeriesWindow::from_i64(&v));
        assert!(e.coefficients.iter().all(One::is_one));
        let ones = exponential_transform(&SeriesWindow::from_i64(&[1, 1, 1, 1]));
        assert_eq!(ones.coefficients[3], BigRational::new(1.into(), 6.into()));
    }

    #[test]
    fn zero_runs_basic() {
        let r = zero_runs([true, true, false, true, false, false, true, true, true, false]);
        assert_eq!(r.runs, vec![(0, 1), (3, 3), (6, 8)]);
        assert_eq!(r.max_run, 3);
        assert!(!r.growing);
        let r = zero_runs([false, true, false, true, true, false, true, true, true, false, true]);
        assert!(r.growing);
        assert_eq!(r.complete_runs().len(), 3);
    }

    #[test]
    fn gk_on_simple_series() {
        let free = DimSeries::new((0..40).map(|n| BigUint::one() << n).collect(), IndexKind::Degree);
        assert!(gk_estimate(&free, DEFAULT_TAIL_FRACTION).unwrap().exp_flag);
        let lin = DimSeries::from_u64(&vec![1; 1000], IndexKind::Degree);
        let r = gk_estimate(&lin, DEFAULT_TAIL_FRACTION).unwrap();
        assert!(!r.exp_flag);
        assert!((r.slope.unwrap() - 1.0).abs() < 0.01);
        let dead = DimSeries::from_u64(&[0, 1, 0, 0, 0, 0], IndexKind::Arity);
        assert_eq!(gk_estimate(&dead, 0.5), Err(SeriesError::Degenerate));
    }

    #[test]
    fn polynomial_formatting() {
        let p = vec![q(0), q(-1), BigRational::new(3.into(), 2.into()), q(0), q(1)];
        assert_eq!(format_polynomial(&p, "z"), "-z + 3/2*z^2 + z^4");
        assert_eq!(format_polynomial(&[], "z"), "0");
    }
}
