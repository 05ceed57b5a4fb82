//! Factor-avoidance automaton (Aho–Corasick with a dense goto table) and
//! transfer-matrix counting of words that avoid every pattern.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Deterministic automaton over symbols `0..alphabet_size` whose states are
/// the prefixes of the patterns. A state is `dead` when the text read so
/// far ends with some pattern.
#[derive(Debug, Clone)]
pub struct FactorAutomaton {
    alphabet_size: usize,
    goto: Vec<Vec<usize>>,
    dead: Vec<bool>,
}

impl FactorAutomaton {
    pub fn new(alphabet_size: usize, patterns: &[Vec<usize>]) -> Self {
        let mut trie: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet_size]];
        let mut dead = vec![false];
        for p in patterns {
            let mut s = 0;
            for &c in p {
                assert!(c < alphabet_size, "symbol {c} outside alphabet of size {alphabet_size}");
                s = match trie[s][c] {
                    Some(t) => t,
                    None => {
                        trie.push(vec![None; alphabet_size]);
                        dead.push(false);
                        let t = trie.len() - 1;
                        trie[s][c] = Some(t);
                        t
                    }
                };
            }
            dead[s] = true;
        }
        let n = trie.len();
        let mut goto = vec![vec![0usize; alphabet_size]; n];
        let mut fail = vec![0usize; n];
        let mut queue = VecDeque::new();
        for c in 0..alphabet_size {
            if let Some(t) = trie[0][c] {
                goto[0][c] = t;
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] = dead[s] || dead[fail[s]];
            for c in 0..alphabet_size {
                match trie[s][c] {
                    Some(t) => {
                        fail[t] = goto[fail[s]][c];
                        goto[s][c] = t;
                        queue.push_back(t);
                    }
                    None => goto[s][c] = goto[fail[s]][c],
                }
            }
        }
        Self { alphabet_size, goto, dead }
    }

    pub fn num_states(&self) -> usize {
        self.goto.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn step(&self, state: usize, symbol: usize) -> usize {
        self.goto[state][symbol]
    }

    pub fn is_dead(&self, state: usize) -> bool {
        self.dead[state]
    }

    /// `out[n]` = number of words of length `n` avoiding every pattern.
    pub fn count_avoiding(&self, max_len: usize) -> Vec<BigUint> {
        let mut out = Vec::with_capacity(max_len + 1);
        let mut cur = self.initial();
        out.push(BigUint::one());
        for _ in 0..max_len {
            cur = self.advance(&cur, |_| true);
            out.push(cur.iter().sum());
        }
        out
    }

    /// Count vector with a single word (the empty one) at the start state.
    pub fn initial(&self) -> Vec<BigUint> {
        let mut v = vec![BigUint::zero(); self.num_states()];
        if !self.dead[0] {
            v[0] = BigUint::one();
        }
        v
    }

    /// One transfer step over the symbols accepted by `allow`, dropping
    /// words that enter a dead state.
    pub fn advance(&self, counts: &[BigUint], allow: impl Fn(usize) -> bool) -> Vec<BigUint> {
        let mut next = vec![BigUint::zero(); self.num_states()];
        for (s, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for sym in 0..self.alphabet_size {
                if !allow(sym) {
                    continue;
                }
                let t = self.goto[s][sym];
                if !self.dead[t] {
                    next[t] += c;
                }
            }
        }
        next
    }
}

/// Drops every pattern that contains another pattern as a factor, and
/// duplicates. Output keeps first-seen order.
pub fn self_reduce_words(words: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    use std::collections::HashSet;
    let set: HashSet<&[usize]> = words.iter().map(Vec::as_slice).collect();
    let max_len = words.iter().map(Vec::len).max().unwrap_or(0);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in &words {
        if !seen.insert(w.clone()) {
            continue;
        }
        let mut reducible = false;
        'outer: for len in 1..w.len().min(max_len + 1) {
            for start in 0..=w.len() - len {
                if set.contains(&w[start..start + len]) {
                    reducible = true;
                    break 'outer;
                }
            }
        }
        if !reducible {
            out.push(w.clone());
        }
    }
    out
}

/// True iff `needle` occurs as a contiguous factor of `hay`.
pub fn contains_factor(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(alpha: usize, patterns: &[Vec<usize>], len: usize) -> u64 {
        let mut count = 0;
        let total = alpha.pow(len as u32);
        for mut code in 0..total {
            let mut w = Vec::with_capacity(len);
            for _ in 0..len {
                w.push(code % alpha);
                code /= alpha;
            }
            if patterns.iter().all(|p| !contains_factor(&w, p)) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        let cases: Vec<(usize, Vec<Vec<usize>>)> = vec![
            (2, vec![vec![0, 0]]),
            (2, vec![vec![1, 0], vec![1, 1]]),
            (3, vec![vec![0, 1, 2], vec![2, 2], vec![1, 0, 1]]),
            (2, vec![]),
            (2, vec![vec![0, 1, 0, 1], vec![1, 1, 1]]),
        ];
        for (alpha, pats) in cases {
            let a = FactorAutomaton::new(alpha, &pats);
            let got = a.count_avoiding(9);
            for (n, g) in got.iter().enumerate() {
                assert_eq!(*g, BigUint::from(brute(alpha, &pats, n)), "{pats:?} n={n}");
            }
        }
    }

    #[test]
    fn self_reduction_drops_superwords() {
        let out = self_reduce_words(vec![vec![0, 1, 0], vec![1, 0], vec![1, 1], vec![1, 0]]);
        assert_eq!(out, vec![vec![1, 0], vec![1, 1]]);
    }
}
