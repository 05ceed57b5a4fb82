//! Transfer-matrix counting of normal forms over root crowns.
//!
//! The state of a normal form is its crown of depth `H - 1`. A generator `g`
//! over children with crowns `c_1..c_r` gives a normal form iff no relation
//! matches at the root of `g(c_1, .., c_r)`, and the new state is the depth
//! `H - 1` crown of that tree. Counting is then a system of convolution
//! recurrences, one generating series per state. Products over child tuples
//! share prefixes through a trie, so each tuple prefix is convolved once.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::Zero;

use super::enumerate::crown;
use super::MonomialOperadPresentation;
use crate::tree::TreeMonomial;

/// Reachable crown states and, per generator, every admissible child tuple
/// with the state it produces.
struct Machine {
    states: Vec<TreeMonomial>,
    leaf_state: usize,
    /// (generator arity, child states, target state)
    rules: Vec<(usize, Vec<usize>, usize)>,
}

impl Machine {
    fn build(pres: &MonomialOperadPresentation) -> Self {
        let depth = pres.max_relation_height() - 1;
        let alphabet = pres.alphabet();
        let mut known: BTreeSet<TreeMonomial> = BTreeSet::new();
        known.insert(crown(&TreeMonomial::Leaf, depth));
        loop {
            let current: Vec<TreeMonomial> = known.iter().cloned().collect();
            let mut grew = false;
            for g in 0..alphabet.len() {
                for_each_tuple(current.len(), alphabet.arity(g), &mut |tuple| {
                    let top = TreeMonomial::Node(g, tuple.iter().map(|&i| current[i].clone()).collect());
                    if pres.root_ok(&top) && known.insert(crown(&top, depth)) {
                        grew = true;
                    }
                });
            }
            if !grew {
                break;
            }
        }
        let states: Vec<TreeMonomial> = known.into_iter().collect();
        let index: BTreeMap<&TreeMonomial, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let leaf_state = index[&crown(&TreeMonomial::Leaf, depth)];
        let mut rules = Vec::new();
        for g in 0..alphabet.len() {
            let r = alphabet.arity(g);
            for_each_tuple(states.len(), r, &mut |tuple| {
                let top = TreeMonomial::Node(g, tuple.iter().map(|&i| states[i].clone()).collect());
                if pres.root_ok(&top) {
                    rules.push((r, tuple.to_vec(), index[&crown(&top, depth)]));
                }
            });
        }
        Self { states, leaf_state, rules }
    }
}

fn for_each_tuple(n: usize, len: usize, f: &mut impl FnMut(&[usize])) {
    if n == 0 {
        return;
    }
    let mut cur = vec![0usize; len];
    loop {
        f(&cur);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < n {
                break;
            }
            cur[pos] = 0;
        }
    }
}

/// Coefficients are truncated polynomials of a fixed length; length 1 is a
/// plain integer.
type Coef = Vec<BigUint>;

fn mul_add(acc: &mut Coef, a: &Coef, b: &Coef) {
    let len = acc.len();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                acc[i + j] += x * y;
            }
        }
    }
}

fn add_assign(acc: &mut Coef, x: &Coef) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a += b;
    }
}

struct TrieNode {
    parent: Option<usize>,
    /// child state at this position
    state: usize,
    /// 1-based position in the tuple
    depth: usize,
    arity: usize,
    series: Vec<Coef>,
}

/// How the index moves: `shift` is added by a new root, `valuation` is the
/// smallest index any subtree can have.
struct Grading {
    shift: usize,
    valuation: usize,
    leaf_index: usize,
    leaf_coef: Coef,
}

/// `f[s][n]` for every state `s` and `n = 0..=horizon`.
fn run(pres: &MonomialOperadPresentation, horizon: usize, grading: &Grading) -> Vec<Vec<Coef>> {
    let m = Machine::build(pres);
    let width = grading.leaf_coef.len();
    let zero: Coef = vec![BigUint::zero(); width];

    let mut trie: Vec<TrieNode> = Vec::new();
    let mut lookup: BTreeMap<(Option<usize>, usize, usize), usize> = BTreeMap::new();
    let mut finals: Vec<(usize, usize)> = Vec::new();
    for (r, tuple, target) in &m.rules {
        let mut parent = None;
        for (j, &s) in tuple.iter().enumerate() {
            // The generator arity is part of the key so tries of different
            // arities never share nodes.
            let key = (parent, s, *r);
            let id = *lookup.entry(key).or_insert_with(|| {
                trie.push(TrieNode { parent, state: s, depth: j + 1, arity: *r, series: Vec::new() });
                trie.len() - 1
            });
            parent = Some(id);
        }
        finals.push((parent.expect("generators have positive arity"), *target));
    }

    let mut f: Vec<Vec<Coef>> = vec![Vec::with_capacity(horizon + 1); m.states.len()];
    for n in 0..=horizon {
        for row in f.iter_mut() {
            row.push(zero.clone());
        }
        for id in 0..trie.len() {
            let node = &trie[id];
            let behind = grading.shift + (node.arity - node.depth) * grading.valuation;
            let Some(t) = n.checked_sub(behind) else { continue };
            let mut acc = zero.clone();
            let fs = &f[node.state];
            match node.parent {
                None => add_assign(&mut acc, &fs[t]),
                Some(p) => {
                    // prefix_j(t) = sum over m of prefix_{j-1}(m) * f[s_j](t - m)
                    let lo = (node.depth - 1) * grading.valuation;
                    let ps = &trie[p].series;
                    if t >= grading.valuation + lo {
                        for mm in lo..=t - grading.valuation {
                            mul_add(&mut acc, &ps[mm], &fs[t - mm]);
                        }
                    }
                }
            }
            debug_assert_eq!(trie[id].series.len(), t);
            trie[id].series.push(acc);
        }
        if n == grading.leaf_index {
            add_assign(&mut f[m.leaf_state][n], &grading.leaf_coef);
        }
        if n >= grading.shift {
            for &(node, target) in &finals {
                let v = trie[node].series[n - grading.shift].clone();
                add_assign(&mut f[target][n], &v);
            }
        }
    }
    f
}

/// Arity counts. Without a cap the alphabet must have no unary generator;
/// with a cap, trees of weight `≤ cap` are counted by arity.
pub(super) fn count_by_arity(
    pres: &MonomialOperadPresentation,
    max_arity: usize,
    weight_cap: Option<usize>,
) -> Vec<BigUint> {
    match weight_cap {
        None => {
            let grading = Grading { shift: 0, valuation: 1, leaf_index: 1, leaf_coef: vec![BigUint::from(1u32)] };
            let f = run(pres, max_arity, &grading);
            (0..=max_arity).map(|n| f.iter().map(|row| row[n][0].clone()).sum()).collect()
        }
        Some(cap) => {
            let mut leaf = vec![BigUint::zero(); max_arity + 1];
            if max_arity >= 1 {
                leaf[1] = BigUint::from(1u32);
            }
            let grading = Grading { shift: 1, valuation: 0, leaf_index: 0, leaf_coef: leaf };
            let f = run(pres, cap, &grading);
            let mut out = vec![BigUint::zero(); max_arity + 1];
            for row in &f {
                for coef in row {
                    for (o, c) in out.iter_mut().zip(coef) {
                        *o += c;
                    }
                }
            }
            out
        }
    }
}

pub(super) fn count_by_weight(pres: &MonomialOperadPresentation, max_weight: usize) -> Vec<BigUint> {
    let grading = Grading { shift: 1, valuation: 0, leaf_index: 0, leaf_coef: vec![BigUint::from(1u32)] };
    let f = run(pres, max_weight, &grading);
    (0..=max_weight).map(|n| f.iter().map(|row| row[n][0].clone()).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Alphabet;

    #[test]
    fn tuples_enumerate_the_product() {
        let mut seen = Vec::new();
        for_each_tuple(3, 2, &mut |t| seen.push(t.to_vec()));
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[0], vec![0, 0]);
        assert_eq!(seen[8], vec![2, 2]);
    }

    #[test]
    fn ternary_free_operad() {
        // weight w ternary trees: C(3w, w) / (2w + 1)
        let a = Alphabet::new([("t", 3)]).unwrap();
        let p = MonomialOperadPresentation::free(a);
        assert_eq!(
            count_by_weight(&p, 5).iter().map(|v| v.try_into().unwrap()).collect::<Vec<u64>>(),
            vec![1, 1, 3, 12, 55, 273]
        );
        let by_arity: Vec<u64> = count_by_arity(&p, 9, None).iter().map(|v| v.try_into().unwrap()).collect();
        assert_eq!(by_arity, vec![0, 1, 0, 1, 0, 3, 0, 12, 0, 55]);
    }
}
