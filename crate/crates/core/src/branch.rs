//! Single-branched tree monomials as indexed words.
//!
//! The right-normal monomial `x_1 ∘_{i_1} (x_2 ∘_{i_2} (⋯ ∘_{i_{n-1}} x_n))`
//! is stored as the letters `(x_k, i_k)`. The last letter has no composition
//! index; it is stored as 1 so that equal monomials compare equal.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::automaton::FactorAutomaton;
use crate::dims::{DimSeries, IndexKind};
use crate::tree::{Alphabet, GenId, TreeError, TreeMonomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BranchError {
    #[error("tree monomial is not single-branched")]
    NotSingleBranched,
    #[error("period {p} out of range 1..{len}")]
    PeriodOutOfRange { p: usize, len: usize },
    #[error("word is not periodic")]
    Aperiodic,
    #[error("extension bounds invalid: m = {m}, l = {l}, length {len}")]
    BadExtension { m: isize, l: usize, len: usize },
    #[error("period test for {p}: divisibility says {by_divisibility}, explicit extension says {by_extension}")]
    WitnessConflict { p: usize, by_divisibility: bool, by_extension: bool },
    #[error("bad branch word literal: {0}")]
    Parse(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BranchWord {
    letters: Vec<(GenId, usize)>,
}

impl BranchWord {
    /// Builds a word, normalizing the last index to 1. Indices are not
    /// checked against arities here; see [`BranchWord::validate`].
    pub fn new(mut letters: Vec<(GenId, usize)>) -> Self {
        if let Some(last) = letters.last_mut() {
            last.1 = 1;
        }
        Self { letters }
    }

    pub fn letters(&self) -> &[(GenId, usize)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn validate(&self, alphabet: &Alphabet) -> Result<(), BranchError> {
        for (k, &(g, i)) in self.letters.iter().enumerate() {
            if g >= alphabet.len() {
                return Err(BranchError::Tree(TreeError::Alphabet(format!("generator index {g}"))));
            }
            if k + 1 < self.len() && (i == 0 || i > alphabet.arity(g)) {
                return Err(BranchError::Tree(TreeError::LeafIndex { index: i, arity: alphabet.arity(g) }));
            }
        }
        Ok(())
    }

    /// Reads the branch of a single-branched monomial.
    pub fn from_tree(t: &TreeMonomial) -> Result<Self, BranchError> {
        let mut letters = Vec::new();
        let mut cur = t;
        while let TreeMonomial::Node(g, ch) = cur {
            let mut internal = ch.iter().enumerate().filter(|(_, c)| !c.is_trivial());
            match (internal.next(), internal.next()) {
                (None, _) => {
                    letters.push((*g, 1));
                    break;
                }
                (Some((i, c)), None) => {
                    letters.push((*g, i + 1));
                    cur = c;
                }
                (Some(_), Some(_)) => return Err(BranchError::NotSingleBranched),
            }
        }
        Ok(Self::new(letters))
    }

    /// The right-normal tree monomial spelled by this word.
    pub fn to_tree(&self, alphabet: &Alphabet) -> Result<TreeMonomial, BranchError> {
        self.validate(alphabet)?;
        let mut t = TreeMonomial::Leaf;
        for (k, &(g, i)) in self.letters.iter().enumerate().rev() {
            let mut ch = vec![TreeMonomial::Leaf; alphabet.arity(g)];
            if k + 1 < self.len() {
                ch[i - 1] = t;
            }
            t = TreeMonomial::Node(g, ch);
        }
        Ok(t)
    }

    /// Parses `a:1 a:2 b`, the last index optional.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, BranchError> {
        let mut letters = Vec::new();
        let tokens: Vec<&str> = text.split_whitespace().collect();
        for (k, tok) in tokens.iter().enumerate() {
            let (id, idx) = match tok.split_once(':') {
                Some((id, idx)) => {
                    let i: usize = idx.parse().map_err(|_| BranchError::Parse(format!("bad index in {tok:?}")))?;
                    (id, i)
                }
                None if k + 1 == tokens.len() => (*tok, 1),
                None => return Err(BranchError::Parse(format!("letter {tok:?} needs an index"))),
            };
            let g = alphabet.lookup(id).ok_or_else(|| BranchError::Parse(format!("unknown generator {id:?}")))?;
            letters.push((g, idx));
        }
        let w = Self::new(letters);
        w.validate(alphabet)?;
        Ok(w)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        struct D<'a>(&'a BranchWord, &'a Alphabet);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (k, &(g, i)) in self.0.letters.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ")?;
                    }
                    if k + 1 < self.0.len() {
                        write!(f, "{}:{}", self.1.id(g), i)?;
                    } else {
                        f.write_str(self.1.id(g))?;
                    }
                }
                Ok(())
            }
        }
        D(self, alphabet)
    }

    /// The factor of letters `start..start + len` (0-based), as a word.
    pub fn factor(&self, start: usize, len: usize) -> BranchWord {
        BranchWord::new(self.letters[start..start + len].to_vec())
    }

    /// True iff `pattern` occurs at 0-based position `start`: generators
    /// agree everywhere, indices agree except at the pattern's last letter.
    pub fn occurs_at(&self, pattern: &BranchWord, start: usize) -> bool {
        let m = pattern.len();
        if m == 0 || start + m > self.len() {
            return m == 0;
        }
        (0..m).all(|k| {
            let (g, i) = self.letters[start + k];
            let (h, j) = pattern.letters[k];
            g == h && (k + 1 == m || i == j)
        })
    }

    pub fn contains_factor(&self, pattern: &BranchWord) -> bool {
        pattern.is_empty() || (0..self.len()).any(|s| self.occurs_at(pattern, s))
    }

    fn shift_holds(&self, p: usize) -> bool {
        let n = self.len();
        (0..n - p).all(|j| self.letters[j].0 == self.letters[j + p].0)
            && (0..(n - p).saturating_sub(1)).all(|j| self.letters[j].1 == self.letters[j + p].1)
    }

    /// `x_j = x_{j+p}` for `j ≤ n - p` and `i_j = i_{j+p}` for `j ≤ n - p - 1`.
    pub fn is_local_period(&self, p: usize) -> Result<bool, BranchError> {
        if p == 0 || p >= self.len() {
            return Err(BranchError::PeriodOutOfRange { p, len: self.len() });
        }
        Ok(self.shift_holds(p))
    }

    /// Smallest local period, if the word is periodic.
    pub fn minimal_period(&self) -> Option<usize> {
        (1..self.len()).find(|&p| self.shift_holds(p))
    }

    /// The extension `w_{m,l}`: positions `-m..=l`, position `q` copying
    /// letter `((q - 1) mod p) + 1` for the minimal period `p`.
    pub fn extend(&self, m: isize, l: usize) -> Result<BranchWord, BranchError> {
        let p = self.minimal_period().ok_or(BranchError::Aperiodic)?;
        let n = self.len();
        if m < -1 || l < n {
            return Err(BranchError::BadExtension { m, l, len: n });
        }
        let p_i = p as isize;
        let letters = (-m..=l as isize)
            .map(|q| {
                let r = (q - 1).rem_euclid(p_i) as usize;
                self.letters[r]
            })
            .collect();
        Ok(BranchWord::new(letters))
    }

    /// Whether `p` is a local period of every extension. Decided as
    /// "minimal period divides `p`" and confirmed on the explicit extension
    /// `w_{p, n + p}`; disagreement is reported as an error.
    pub fn is_period(&self, p: usize) -> Result<bool, BranchError> {
        let mp = self.minimal_period().ok_or(BranchError::Aperiodic)?;
        if p == 0 {
            return Err(BranchError::PeriodOutOfRange { p, len: self.len() });
        }
        let by_divisibility = p.is_multiple_of(mp);
        let ext = self.extend(p as isize, self.len() + p)?;
        let by_extension = ext.is_local_period(p)?;
        if by_divisibility != by_extension {
            return Err(BranchError::WitnessConflict { p, by_divisibility, by_extension });
        }
        Ok(by_divisibility)
    }
}

/// A finite set of forbidden factors over an alphabet. The words avoiding
/// them form a submonomial-closed set of single-branched monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoidanceSystem {
    pub alphabet: Alphabet,
    pub forbidden: Vec<BranchWord>,
}

impl AvoidanceSystem {
    pub fn new(alphabet: Alphabet, forbidden: Vec<BranchWord>) -> Result<Self, BranchError> {
        for w in &forbidden {
            w.validate(&alphabet)?;
        }
        Ok(Self { alphabet, forbidden })
    }

    /// Does `w` avoid every forbidden factor?
    pub fn admits(&self, w: &BranchWord) -> bool {
        !self.forbidden.iter().any(|f| w.contains_factor(f))
    }
}

/// `values[h]` = number of words of height `h` avoiding every forbidden
/// factor, via a factor automaton over the letters `(generator, index)`.
pub fn closed_set_counts(sys: &AvoidanceSystem, max_height: usize) -> DimSeries {
    let alphabet = &sys.alphabet;
    let mut offset = Vec::with_capacity(alphabet.len());
    let mut size = 0;
    for g in 0..alphabet.len() {
        offset.push(size);
        size += alphabet.arity(g);
    }
    let symbol = |g: GenId, i: usize| offset[g] + i - 1;

    // A pattern's last index is a wildcard, so it expands to every index.
    let mut patterns = Vec::new();
    for f in &sys.forbidden {
        let Some((&(g_last, _), body)) = f.letters.split_last() else { continue };
        let prefix: Vec<usize> = body.iter().map(|&(g, i)| symbol(g, i)).collect();
        for i in 1..=alphabet.arity(g_last) {
            let mut p = prefix.clone();
            p.push(symbol(g_last, i));
            patterns.push(p);
        }
    }
    let empty_forbidden = sys.forbidden.iter().any(BranchWord::is_empty);
    let aut = FactorAutomaton::new(size.max(1), &patterns);

    let mut values = Vec::with_capacity(max_height + 1);
    values.push(if empty_forbidden { BigUint::zero() } else { BigUint::one() });
    let mut counts = aut.initial();
    for _h in 1..=max_height {
        // Words of height h: h - 1 indexed letters then a final generator,
        // read through its index-1 symbol.
        let mut total = BigUint::zero();
        if !empty_forbidden {
            for (s, c) in counts.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for g in 0..alphabet.len() {
                    if !aut.is_dead(aut.step(s, symbol(g, 1))) {
                        total += c;
                    }
                }
            }
        }
        values.push(total);
        counts = aut.advance(&counts, |_| true);
    }
    DimSeries::new(values, IndexKind::Height)
}

/// Every word of height `h`, in lexicographic order of letters. Used as a
/// brute-force oracle; the count grows like `(Σ arities)^h`.
pub fn all_branch_words(alphabet: &Alphabet, h: usize) -> Vec<BranchWord> {
    let letters: Vec<(GenId, usize)> =
        (0..alphabet.len()).flat_map(|g| (1..=alphabet.arity(g)).map(move |i| (g, i))).collect();
    let mut out = vec![Vec::new()];
    for k in 0..h {
        let last = k + 1 == h;
        let mut next = Vec::new();
        for w in &out {
            if last {
                for g in 0..alphabet.len() {
                    let mut v: Vec<(GenId, usize)> = w.clone();
                    v.push((g, 1));
                    next.push(v);
                }
            } else {
                for &l in &letters {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out.into_iter().map(BranchWord::new).collect()
}

/// One binary generator `x`; words with at most one composition index 2.
/// The forbidden family `x:2 (x:1)^k x:2 x` is infinite, so it is cut at the
/// longest pattern that fits in `max_height`.
pub fn example46_system(max_height: usize) -> AvoidanceSystem {
    let alphabet = Alphabet::new([("x", 2)]).expect("static alphabet");
    let mut forbidden = Vec::new();
    for k in 0..=max_height.saturating_sub(3) {
        let mut letters = vec![(0, 2)];
        letters.extend(std::iter::repeat_n((0, 1), k));
        letters.push((0, 2));
        letters.push((0, 1));
        forbidden.push(BranchWord::new(letters));
    }
    AvoidanceSystem { alphabet, forbidden }
}
