//! Finitely presented nonsymmetric monomial operads.
//!
//! A presentation is an alphabet plus a finite set of forbidden tree
//! monomials. The normal forms `Irr` are the monomials divisible by no
//! relation; they form a basis of the quotient operad.

mod dp;
mod enumerate;
mod gap;
mod sweep;

pub use enumerate::{enumerate_irr, enumerate_irr_bounded, IrrEnumerator};
pub use gap::{gap_dichotomy_check, AffineFit, GapReport, GrowthClass};
pub use sweep::{binary_alphabet, binary_monomials, sweep, SweepRow, SweepSummary};

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::dims::{DimSeries, IndexKind};
use crate::tree::{divides, Alphabet, TreeError, TreeMonomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperadError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("relations must be nontrivial tree monomials")]
    TrivialRelation,
    #[error("the alphabet has a unary generator, so arity counts need a weight cap")]
    NeedsWeightCap,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("horizon {got} is too short; need at least {needed}")]
    HorizonTooShort { needed: usize, got: usize },
}

/// Which counting engine to use for arity-indexed dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Materializes every normal form. Reference oracle.
    Brute,
    /// Transfer-matrix count over root crowns.
    ProfileDp,
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Engine::Brute),
            "dp" | "profile_dp" | "profile-dp" => Ok(Engine::ProfileDp),
            other => Err(format!("unknown engine {other:?} (expected brute or dp)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOperadPresentation {
    alphabet: Alphabet,
    relations: Vec<TreeMonomial>,
    name: Option<String>,
}

impl MonomialOperadPresentation {
    /// Validates every relation against the alphabet and self-reduces the
    /// set: duplicates and relations divisible by another relation are
    /// dropped. Relations are kept sorted by (weight, structure).
    pub fn new(
        alphabet: Alphabet,
        relations: impl IntoIterator<Item = TreeMonomial>,
        name: Option<String>,
    ) -> Result<Self, OperadError> {
        let mut rels: Vec<TreeMonomial> = Vec::new();
        for r in relations {
            if r.is_trivial() {
                return Err(OperadError::TrivialRelation);
            }
            alphabet.validate(&r)?;
            rels.push(r);
        }
        rels.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
        rels.dedup();
        let mut kept: Vec<TreeMonomial> = Vec::new();
        for r in rels {
            let redundant = kept.iter().any(|k| divides(k, &r).unwrap_or(false));
            if !redundant {
                kept.push(r);
            }
        }
        Ok(Self { alphabet, relations: kept, name })
    }

    pub fn free(alphabet: Alphabet) -> Self {
        Self { alphabet, relations: Vec::new(), name: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[TreeMonomial] {
        &self.relations
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Largest relation height, or 1 without relations.
    pub fn max_relation_height(&self) -> usize {
        self.relations.iter().map(TreeMonomial::height).max().unwrap_or(1).max(1)
    }

    pub fn is_normal_form(&self, t: &TreeMonomial) -> bool {
        if t.is_trivial() {
            return true;
        }
        !self.relations.iter().any(|r| divides(r, t).unwrap_or(false))
    }

    /// True iff no relation matches with its lowest vertex at the root of `t`.
    pub(crate) fn root_ok(&self, t: &TreeMonomial) -> bool {
        !self.relations.iter().any(|r| crate::tree::matches_at(r, t))
    }

    /// Parses the text format: `generator <id> <arity>` lines, then
    /// `relation <literal>` lines. `#` starts a comment; `name <text>` is
    /// optional.
    pub fn parse(text: &str) -> Result<Self, OperadError> {
        let mut gens: Vec<(String, usize)> = Vec::new();
        let mut rel_lines: Vec<(usize, String)> = Vec::new();
        let mut name = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match kw {
                "generator" => {
                    if !rel_lines.is_empty() {
                        return Err(OperadError::Parse {
                            line: line_no,
                            msg: "generator lines must precede relation lines".into(),
                        });
                    }
                    let mut parts = rest.split_whitespace();
                    let (Some(id), Some(ar), None) = (parts.next(), parts.next(), parts.next()) else {
                        return Err(OperadError::Parse {
                            line: line_no,
                            msg: format!("expected `generator <id> <arity>`, got {raw:?}"),
                        });
                    };
                    let arity: usize = ar.parse().map_err(|_| OperadError::Parse {
                        line: line_no,
                        msg: format!("arity {ar:?} is not a positive integer"),
                    })?;
                    gens.push((id.to_string(), arity));
                }
                "relation" => rel_lines.push((line_no, rest.to_string())),
                "name" => name = Some(rest.to_string()),
                other => return Err(OperadError::Parse { line: line_no, msg: format!("unknown keyword {other:?}") }),
            }
        }
        let alphabet = Alphabet::new(gens).map_err(|e| OperadError::Parse { line: 0, msg: e.to_string() })?;
        let mut rels = Vec::with_capacity(rel_lines.len());
        for (line, lit) in rel_lines {
            let t = alphabet.parse_monomial(&lit).map_err(|e| OperadError::Parse { line, msg: e.to_string() })?;
            if t.is_trivial() {
                return Err(OperadError::Parse { line, msg: "relation must be nontrivial".into() });
            }
            rels.push(t);
        }
        Self::new(alphabet, rels, name)
    }

    /// Inverse of [`Self::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            out.push_str(&format!("name {n}\n"));
        }
        for g in self.alphabet.generators() {
            out.push_str(&format!("generator {} {}\n", g.id(), g.arity()));
        }
        for r in &self.relations {
            out.push_str(&format!("relation {}\n", self.alphabet.format_monomial(r)));
        }
        out
    }

    /// `values[n]` = number of normal forms of arity `n`, `n ≤ max_arity`.
    ///
    /// With a unary generator the count at a fixed arity can be infinite, so
    /// `weight_cap` is required and the result is marked inexact.
    pub fn dim_by_arity(
        &self,
        max_arity: usize,
        engine: Engine,
        weight_cap: Option<usize>,
    ) -> Result<DimSeries, OperadError> {
        let unary = self.alphabet.has_unary();
        if unary && weight_cap.is_none() {
            return Err(OperadError::NeedsWeightCap);
        }
        let cap = if unary { weight_cap } else { None };
        let values = match engine {
            Engine::ProfileDp => dp::count_by_arity(self, max_arity, cap),
            Engine::Brute => {
                let max_weight = cap.unwrap_or(max_arity.saturating_sub(1));
                let mut values = vec![BigUint::zero(); max_arity + 1];
                for level in enumerate_irr_bounded(self, max_weight, Some(max_arity)) {
                    for t in level {
                        values[t.arity()] += 1u32;
                    }
                }
                values
            }
        };
        let mut out = DimSeries::new(values, IndexKind::Arity);
        out.exact = !unary;
        Ok(out)
    }

    /// `values[w]` = number of normal forms of weight `w`.
    pub fn dim_by_weight(&self, max_weight: usize) -> DimSeries {
        DimSeries::new(dp::count_by_weight(self, max_weight), IndexKind::Weight)
    }

    /// Weight counts by materializing every normal form.
    pub fn dim_by_weight_brute(&self, max_weight: usize) -> DimSeries {
        let values = enumerate_irr(self, max_weight).map(|level| BigUint::from(level.len())).collect();
        DimSeries::new(values, IndexKind::Weight)
    }
}
