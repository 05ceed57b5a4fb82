//! Monomial orders on generator words and their path extension to tree
//! monomials, plus leading-monomial extraction for tree polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::tree::{Alphabet, GenId, TreeMonomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("plain lexicographic order is not a well-order on words; use deglex or degrevlex")]
    NotWellOrdered,
    #[error("generator rank must list every generator exactly once: {0}")]
    BadRank(String),
    #[error("tree polynomial terms must share one arity (expected {expected}, got {got})")]
    MixedArity { expected: usize, got: usize },
    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordOrderKind {
    DegLex,
    DegRevLex,
    /// Accepted by the parser only so it can be rejected with a clear error.
    Lex,
}

impl std::str::FromStr for WordOrderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "deglex" => Ok(WordOrderKind::DegLex),
            "degrevlex" => Ok(WordOrderKind::DegRevLex),
            "lex" => Ok(WordOrderKind::Lex),
            other => Err(format!("unknown word order {other:?}")),
        }
    }
}

/// A monomial order on words over the alphabet.
///
/// `rank[g]` is the position of generator `g` in the ascending generator
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordOrder {
    kind: WordOrderKind,
    rank: Vec<usize>,
}

impl WordOrder {
    /// `ascending` lists generator indices from smallest to largest.
    pub fn new(kind: WordOrderKind, ascending: &[GenId]) -> Result<Self, OrderError> {
        if kind == WordOrderKind::Lex {
            return Err(OrderError::NotWellOrdered);
        }
        let n = ascending.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &g) in ascending.iter().enumerate() {
            if g >= n || rank[g] != usize::MAX {
                return Err(OrderError::BadRank(format!("{ascending:?}")));
            }
            rank[g] = pos;
        }
        Ok(Self { kind, rank })
    }

    /// Deglex with generators ranked in declaration order.
    pub fn deglex(alphabet: &Alphabet) -> Self {
        Self { kind: WordOrderKind::DegLex, rank: (0..alphabet.len()).collect() }
    }

    /// Builds the rank from generator ids, e.g. `["b", "c", "a"]`.
    pub fn from_ids(kind: WordOrderKind, alphabet: &Alphabet, ids: &[&str]) -> Result<Self, OrderError> {
        let mut asc = Vec::with_capacity(ids.len());
        for id in ids {
            asc.push(alphabet.lookup(id).ok_or_else(|| OrderError::BadRank(format!("unknown generator {id:?}")))?);
        }
        if asc.len() != alphabet.len() {
            return Err(OrderError::BadRank(format!("{} ids given for {} generators", asc.len(), alphabet.len())));
        }
        Self::new(kind, &asc)
    }

    pub fn kind(&self) -> WordOrderKind {
        self.kind
    }

    pub fn compare(&self, u: &[GenId], v: &[GenId]) -> Ordering {
        match u.len().cmp(&v.len()) {
            Ordering::Equal => {}
            other => return other,
        }
        match self.kind {
            WordOrderKind::DegLex | WordOrderKind::Lex => {
                for (a, b) in u.iter().zip(v) {
                    match self.rank[*a].cmp(&self.rank[*b]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            WordOrderKind::DegRevLex => {
                for (a, b) in u.iter().zip(v).rev() {
                    match self.rank[*a].cmp(&self.rank[*b]) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Path extension of a word order: more leaves is larger; at equal arity
/// the first differing path word decides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeOrder {
    base: WordOrder,
}

impl TreeOrder {
    pub fn new(base: WordOrder) -> Self {
        Self { base }
    }

    pub fn deglex(alphabet: &Alphabet) -> Self {
        Self::new(WordOrder::deglex(alphabet))
    }

    pub fn base(&self) -> &WordOrder {
        &self.base
    }

    pub fn compare(&self, t1: &TreeMonomial, t2: &TreeMonomial) -> Ordering {
        let p1 = t1.path_sequence();
        let p2 = t2.path_sequence();
        match p1.len().cmp(&p2.len()) {
            Ordering::Equal => {}
            other => return other,
        }
        for (u, v) in p1.words().iter().zip(p2.words()) {
            match self.base.compare(u, v) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

/// A finite linear combination of tree monomials of one arity with exact
/// rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreePolynomial {
    terms: BTreeMap<TreeMonomial, BigRational>,
    arity: Option<usize>,
}

impl TreePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn arity(&self) -> Option<usize> {
        self.arity
    }

    pub fn add_term(&mut self, coeff: BigRational, t: TreeMonomial) -> Result<(), OrderError> {
        let a = t.arity();
        if let Some(expected) = self.arity {
            if expected != a {
                return Err(OrderError::MixedArity { expected, got: a });
            }
        }
        let entry = self.terms.entry(t).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        self.arity = if self.terms.is_empty() { None } else { Some(a) };
        Ok(())
    }

    pub fn support(&self) -> impl Iterator<Item = &TreeMonomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, t: &TreeMonomial) -> Option<&BigRational> {
        self.terms.get(t)
    }

    pub fn leading_monomial(&self, ord: &TreeOrder) -> Result<&TreeMonomial, OrderError> {
        self.terms.keys().max_by(|a, b| ord.compare(a, b)).ok_or(OrderError::ZeroPolynomial)
    }
}
