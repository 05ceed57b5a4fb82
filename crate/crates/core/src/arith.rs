//! Exact integer helpers: floors of rational powers and decimal rationals.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("cannot parse {0:?} as a decimal number")]
    BadDecimal(String),
    #[error("exponent must be a positive rational, got {0}")]
    BadExponent(String),
}

/// Parses `"2.5"`, `"-0.125"`, `"3"`, or `"7/4"` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational, ArithError> {
    let bad = || ArithError::BadDecimal(s.to_string());
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let q = BigRational::new(num, den);
    Ok(if neg { -q } else { q })
}

/// `⌊n^(a/b)⌋`, exactly: the largest `m` with `m^b ≤ n^a`.
pub fn floor_rational_power(n: u64, exponent: &BigRational) -> Result<BigUint, ArithError> {
    if !exponent.is_positive() {
        return Err(ArithError::BadExponent(exponent.to_string()));
    }
    let a = exponent.numer().to_u32().ok_or_else(|| ArithError::BadExponent(exponent.to_string()))?;
    let b = exponent.denom().to_u32().ok_or_else(|| ArithError::BadExponent(exponent.to_string()))?;
    if n <= 1 {
        return Ok(BigUint::from(n));
    }
    let target = BigUint::from(n).pow(a);
    let estimate = (n as f64).powf(a as f64 / b as f64);
    let mut m =
        if estimate.is_finite() && estimate < 1e15 { BigUint::from(estimate as u64) } else { target.nth_root(b) };
    while m.pow(b) > target {
        m -= 1u32;
    }
    loop {
        let next = &m + 1u32;
        if next.pow(b) <= target {
            m = next;
        } else {
            break;
        }
    }
    Ok(m)
}

/// Same as [`floor_rational_power`] for exponents small enough to fit `u64`.
pub fn floor_rational_power_u64(n: u64, exponent: &BigRational) -> Result<u64, ArithError> {
    let v = floor_rational_power(n, exponent)?;
    v.to_u64().ok_or_else(|| ArithError::BadExponent(format!("{n}^{exponent} overflows u64")))
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
