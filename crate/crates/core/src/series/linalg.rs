//! Exact nullspaces of integer matrices by fraction-free Gauss–Jordan
//! elimination, with a modular rank test as a fast exit.
#![allow(clippy::needless_range_loop)]

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A prime below 2^61 for the modular rank test.
const PRIME: u64 = 2_305_843_009_213_693_951;

/// Clears denominators row by row.
pub fn integer_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

fn mod_p(x: &BigInt) -> u64 {
    let r = x.mod_floor(&BigInt::from(PRIME));
    r.to_u64().expect("reduced below the prime")
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

/// Rank of the matrix reduced modulo a large prime. Never exceeds the
/// rational rank, so full rank here proves a trivial nullspace.
pub fn rank_mod_p(rows: &[Vec<BigInt>], cols: usize) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(mod_p).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][c], PRIME - 2);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = mul_mod(m[i][c], inv);
                for k in c..cols {
                    let sub = mul_mod(f, m[rank][k]);
                    m[i][k] = (m[i][k] + PRIME - sub) % PRIME;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn remove_content(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// A basis of the rational nullspace, each vector scaled to coprime
/// integers with a positive last nonzero entry.
pub fn nullspace(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    if rank_mod_p(rows, cols) == cols {
        return Vec::new();
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].bits()) else {
            continue;
        };
        m.swap(r, p);
        let piv_row = m[r].clone();
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let a = piv_row[c].clone();
            let b = m[i][c].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (&a / &g, &b / &g);
            for k in 0..cols {
                let v = &m[i][k] * &fa - &piv_row[k] * &fb;
                m[i][k] = v;
            }
            remove_content(&mut m[i]);
        }
        pivots.push((r, c));
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let l = pivots.iter().fold(BigInt::one(), |acc, &(row, c)| acc.lcm(&m[row][c]));
        let mut v = vec![BigInt::zero(); cols];
        v[free] = l.clone();
        for &(row, c) in &pivots {
            v[c] = -(&m[row][free] * &l) / &m[row][c];
        }
        remove_content(&mut v);
        if let Some(last) = v.iter().rev().find(|x| !x.is_zero()) {
            if last.sign() == Sign::Minus {
                for x in v.iter_mut() {
                    *x = -&*x;
                }
            }
        }
        basis.push(v);
    }
    basis
}

/// Checks `rows · v = 0` exactly.
pub fn annihilates(rows: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    rows.iter().all(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<BigInt>().is_zero())
}
