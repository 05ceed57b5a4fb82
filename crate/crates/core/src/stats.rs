//! Small floating-point helpers for growth estimates. Every value produced
//! here is an estimate and is labelled as such by callers.

use num_bigint::BigUint;

use crate::dims::ln_big;

/// Ordinary least squares `y ≈ slope·x + intercept`. Returns `None` for
/// fewer than two distinct abscissae.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return None;
    }
    let mx = xs[..n].iter().sum::<f64>() / n as f64;
    let my = ys[..n].iter().sum::<f64>() / n as f64;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..n {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// First index of the tail window `[start, last]` covering `fraction` of
/// `0..=last`.
pub fn tail_start(last: usize, fraction: f64) -> usize {
    let len = ((last as f64) * fraction).round() as usize;
    last.saturating_sub(len.max(1))
}

/// Slope of `ln S(n)` against `ln n` over `n ∈ [from, to]`, skipping
/// `n < 2` and `S(n) = 0`.
pub fn log_log_slope(partial_sums: &[BigUint], from: usize, to: usize) -> Option<f64> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let from = from.max(2);
    for (n, s) in partial_sums.iter().enumerate().take(to.saturating_add(1)).skip(from) {
        if s.bits() == 0 {
            continue;
        }
        xs.push((n as f64).ln());
        ys.push(ln_big(s));
    }
    least_squares(&xs, &ys).map(|(s, _)| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, 3.0, 5.0, 7.0];
        let (s, b) = least_squares(&xs, &ys).unwrap();
        assert!((s - 2.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
        assert!(least_squares(&[1.0, 1.0], &[0.0, 2.0]).is_none());
    }

    #[test]
    fn cubic_slope() {
        let sums: Vec<BigUint> = (0u64..=300).map(|n| BigUint::from(n * n * n)).collect();
        let s = log_log_slope(&sums, 200, 300).unwrap();
        assert!((s - 3.0).abs() < 1e-9);
        assert_eq!(tail_start(300, 1.0 / 3.0), 200);
    }
}
