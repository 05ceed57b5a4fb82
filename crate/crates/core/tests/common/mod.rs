//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's matching, enumeration or counting code.
#![allow(dead_code)]

use num_bigint::BigUint;
use oplab_core::{Alphabet, TreeMonomial};
use rand::Rng;

/// Every tree monomial of exactly weight `w`, by direct recursion.
pub fn all_trees(alphabet: &Alphabet, w: usize) -> Vec<TreeMonomial> {
    if w == 0 {
        return vec![TreeMonomial::Leaf];
    }
    let mut out = Vec::new();
    for g in 0..alphabet.len() {
        let k = alphabet.arity(g);
        for split in weight_splits(w - 1, k) {
            let mut partial: Vec<Vec<TreeMonomial>> = vec![Vec::new()];
            for &cw in &split {
                let options = all_trees(alphabet, cw);
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        options.iter().map(move |o| {
                            let mut q = p.clone();
                            q.push(o.clone());
                            q
                        })
                    })
                    .collect();
            }
            out.extend(partial.into_iter().map(|ch| TreeMonomial::Node(g, ch)));
        }
    }
    out
}

fn weight_splits(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in weight_splits(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Internal vertices in preorder: `(label, parent vertex, child slot)`.
struct Flat {
    label: Vec<usize>,
    parent: Vec<Option<usize>>,
    /// `child[v][slot]` = internal vertex at that slot, if any.
    child: Vec<Vec<Option<usize>>>,
}

fn flatten(t: &TreeMonomial) -> Flat {
    let mut f = Flat { label: vec![], parent: vec![], child: vec![] };
    fn go(t: &TreeMonomial, parent: Option<usize>, f: &mut Flat) -> Option<usize> {
        let TreeMonomial::Node(g, ch) = t else { return None };
        let me = f.label.len();
        f.label.push(*g);
        f.parent.push(parent);
        f.child.push(vec![None; ch.len()]);
        for (slot, c) in ch.iter().enumerate() {
            let id = go(c, Some(me), f);
            f.child[me][slot] = id;
        }
        Some(me)
    }
    go(t, None, &mut f);
    f
}

/// The monomial carried by a connected vertex set, rooted at `top`.
fn induced(f: &Flat, mask: u64, top: usize) -> TreeMonomial {
    let ch = f.child[top]
        .iter()
        .map(|c| match c {
            Some(v) if mask >> v & 1 == 1 => induced(f, mask, *v),
            _ => TreeMonomial::Leaf,
        })
        .collect();
    TreeMonomial::Node(f.label[top], ch)
}

/// Naive divisibility: try every vertex subset of `t`, keep the connected
/// ones, and compare the induced monomial with `d`.
pub fn divides_oracle(d: &TreeMonomial, t: &TreeMonomial) -> bool {
    let f = flatten(t);
    let n = f.label.len();
    assert!(n < 20, "oracle is exponential in the weight");
    let dw = d.weight();
    (1u64..1 << n).filter(|m| m.count_ones() as usize == dw).any(|mask| {
        let tops: Vec<usize> =
            (0..n).filter(|&v| mask >> v & 1 == 1 && f.parent[v].is_none_or(|p| mask >> p & 1 == 0)).collect();
        tops.len() == 1 && induced(&f, mask, tops[0]) == *d
    })
}

/// Random tree monomial with weight at most `max_weight`.
pub fn random_tree<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_weight: usize) -> TreeMonomial {
    let mut budget = rng.gen_range(0..=max_weight);
    fn grow<R: Rng>(rng: &mut R, a: &Alphabet, budget: &mut usize) -> TreeMonomial {
        if *budget == 0 {
            return TreeMonomial::Leaf;
        }
        *budget -= 1;
        let g = rng.gen_range(0..a.len());
        let mut slots: Vec<usize> = (0..a.arity(g)).collect();
        // Spread the remaining budget over random slots.
        let mut ch = vec![TreeMonomial::Leaf; a.arity(g)];
        while *budget > 0 && !slots.is_empty() && rng.gen_bool(0.7) {
            let i = rng.gen_range(0..slots.len());
            let s = slots.swap_remove(i);
            ch[s] = grow(rng, a, budget);
        }
        TreeMonomial::Node(g, ch)
    }
    grow(rng, alphabet, &mut budget)
}

/// Brute-force Hilbert function of `F<x_1..x_d>/(forbidden)` in degree `n`.
pub fn brute_hilbert(d: usize, forbidden: &[Vec<usize>], n: usize) -> u64 {
    let total = d.pow(n as u32);
    let mut count = 0;
    for mut code in 0..total {
        let mut w = Vec::with_capacity(n);
        for _ in 0..n {
            w.push(code % d);
            code /= d;
        }
        let hit = forbidden.iter().any(|f| f.len() <= w.len() && w.windows(f.len()).any(|x| x == f.as_slice()));
        if !hit {
            count += 1;
        }
    }
    count
}

/// Partition numbers from Euler's pentagonal recurrence.
pub fn pentagonal_partitions(n: usize) -> Vec<BigUint> {
    let mut p: Vec<num_bigint::BigInt> = vec![1.into()];
    for m in 1..=n as i64 {
        let mut acc = num_bigint::BigInt::from(0);
        for k in 1i64.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += &p[(m - g1) as usize] * sign;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += &p[(m - g2) as usize] * sign;
            }
        }
        p.push(acc);
    }
    p.into_iter().map(|x| x.to_biguint().unwrap()).collect()
}

/// Piecewise operadization profile: `1` at arity 1, `dim A_l` at arity
/// `(l+1)d - l`, zero elsewhere.
pub fn operadization_formula(hilbert: &[u64], d: usize, max_arity: usize) -> Vec<u64> {
    (0..=max_arity)
        .map(|n| {
            if n == 1 {
                return 1;
            }
            // n = d + l(d-1)
            if n >= d && (n - d).is_multiple_of(d - 1) {
                hilbert[(n - d) / (d - 1)]
            } else {
                0
            }
        })
        .collect()
}

/// `[ (2m+1)^{2m+1} + 1, (2m+2)^{2m+2} + 1 ]`, computed directly.
pub fn lambda_block(m: u32) -> (u128, u128) {
    let a = (2 * m + 1) as u128;
    let b = (2 * m + 2) as u128;
    (a.pow(2 * m + 1) + 1, b.pow(2 * m + 2) + 1)
}

pub fn in_lambda_oracle(n: u128) -> bool {
    assert!(n <= lambda_block(4).1, "oracle only covers five blocks");
    (0..5).any(|m| {
        let (lo, hi) = lambda_block(m);
        lo <= n && n <= hi
    })
}
