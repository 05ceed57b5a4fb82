//! Named presentations and series.
//!
//! Operad presets (`ex53-*`, `free-operad:<k>`) are genuine presentations.
//! The rest are explicit series, some with a monomial algebra model that
//! realises the series up to a given degree.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{
    example62_model, parse_parameter, warfield_model, AlgebraError, ClosedFormSeries, MonomialAlgebraPresentation,
};
use crate::branch::{closed_set_counts, example46_system};
use crate::constructions::{operadize, ConstructionError};
use crate::dims::{DimSeries, IndexKind};
use crate::operad::{Engine, MonomialOperadPresentation, OperadError};
use crate::tree::Alphabet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresetError {
    #[error("unknown preset '{0}' (try preset-list)")]
    Unknown(String),
    #[error("preset '{name}' needs a parameter: {usage}")]
    MissingParameter { name: String, usage: &'static str },
    #[error("bad parameter for preset '{name}': {msg}")]
    BadParameter { name: String, msg: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresetKind {
    /// A finite monomial operad presentation.
    Operad(MonomialOperadPresentation),
    /// A series with a closed form.
    Closed(ClosedFormSeries),
    /// Height counts of the single-branched avoidance system whose closed
    /// sets have exactly `h` elements at height `h`.
    Avoidance46,
    /// `1` except on the zero blocks `[m², m²+m]`, `m ≥ 1`.
    SquareGaps,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preset {
    pub name: String,
    pub kind: PresetKind,
}

/// `(pattern, description)` for every catalog entry.
pub const CATALOG: &[(&str, &str)] = &[
    (
        "ex34:<alpha>",
        "operad with floor(n^alpha) - floor((n-1)^alpha) generators in arity n, all compositions zero (arity dims)",
    ),
    ("ex35:<r>", "Warfield-type monomial algebra with GK dimension r in (2,3) (degree dims)"),
    ("ex53-1", "operadization of F<x1,x2>: dims 2^(n-2)"),
    ("ex53-2", "Fibonacci operad, operadization of F<x1,x2>/(x1^2)"),
    ("ex53-3", "operadization of F<x1,x2>/(x2x1, x2^2): dims 0,1,1,2,2,..."),
    ("ex62", "monomial algebra U with dims 3 + delta_Lambda(n) (degree dims)"),
    ("ex64-partition", "enveloping algebra of the positive Witt subalgebra: partition numbers (degree dims)"),
    ("ex46-avoidance", "single-branched avoidance system with h monomials at height h (height dims)"),
    ("free-operad:<arity>", "free operad on one generator of the given arity"),
    ("warfield:<r>", "same as ex35:<r>"),
    ("example62", "same as ex62"),
    ("partition", "partition numbers p(n)"),
    ("floorpow:<alpha>", "same as ex34:<alpha>"),
    ("polyring:<d>", "commutative polynomial ring in d variables: C(n+d-1, d-1)"),
    ("free:<d>", "free associative algebra on d variables: d^n"),
    ("gaps-squares", "1 except zero on [m^2, m^2+m] for m >= 1"),
];

fn param<'a>(name: &str, p: Option<&'a str>, usage: &'static str) -> Result<&'a str, PresetError> {
    p.filter(|s| !s.is_empty()).ok_or_else(|| PresetError::MissingParameter { name: name.to_string(), usage })
}

fn rational(name: &str, p: Option<&str>, usage: &'static str) -> Result<BigRational, PresetError> {
    let s = param(name, p, usage)?;
    parse_parameter(s).map_err(|e| PresetError::BadParameter { name: name.to_string(), msg: e.to_string() })
}

fn count(name: &str, p: Option<&str>, usage: &'static str, min: usize) -> Result<usize, PresetError> {
    let s = param(name, p, usage)?;
    match s.parse::<usize>() {
        Ok(v) if v >= min => Ok(v),
        _ => Err(PresetError::BadParameter {
            name: name.to_string(),
            msg: format!("expected an integer >= {min}, got '{s}'"),
        }),
    }
}

/// The monomial algebras behind the `ex53-*` presets.
pub fn ex53_algebra(which: u8) -> MonomialAlgebraPresentation {
    let forbidden = match which {
        1 => vec![],
        2 => vec![vec![0, 0]],
        _ => vec![vec![1, 0], vec![1, 1]],
    };
    MonomialAlgebraPresentation::numbered(2, forbidden).expect("static presentation")
}

/// Looks up a catalog entry; parameters follow a colon.
pub fn lookup(spec: &str) -> Result<Preset, PresetError> {
    let spec = spec.trim();
    let (head, p) = match spec.split_once(':') {
        Some((h, p)) => (h, Some(p.trim())),
        None => (spec, None),
    };
    let kind = match head {
        "ex34" | "floorpow" => {
            let alpha = rational(head, p, "<alpha>, e.g. 1.5")?;
            if alpha <= BigRational::zero() {
                return Err(PresetError::BadParameter { name: head.into(), msg: "alpha must be positive".into() });
            }
            PresetKind::Closed(ClosedFormSeries::FloorPower(alpha))
        }
        "ex35" | "warfield" => {
            let r = rational(head, p, "<r> in (2,3), e.g. 2.5")?;
            ClosedFormSeries::Warfield(r.clone()).dims(2)?;
            PresetKind::Closed(ClosedFormSeries::Warfield(r))
        }
        "ex53-1" | "ex53-2" | "ex53-3" => {
            let which = head.as_bytes()[5] - b'0';
            let pres = operadize(&ex53_algebra(which))?;
            PresetKind::Operad(pres.with_name(head))
        }
        "ex62" | "example62" => PresetKind::Closed(ClosedFormSeries::Example62),
        "ex64-partition" | "partition" => PresetKind::Closed(ClosedFormSeries::Partition),
        "ex46-avoidance" => PresetKind::Avoidance46,
        "free-operad" => {
            let k = count(head, p, "<arity>, e.g. 2", 1)?;
            let alphabet = Alphabet::new([("a", k)]).map_err(OperadError::from)?;
            PresetKind::Operad(MonomialOperadPresentation::free(alphabet).with_name(spec))
        }
        "polyring" => PresetKind::Closed(ClosedFormSeries::PolynomialRing(count(head, p, "<d>", 0)?)),
        "free" => PresetKind::Closed(ClosedFormSeries::FreeAlgebra(count(head, p, "<d>", 1)?)),
        "gaps-squares" => PresetKind::SquareGaps,
        _ => return Err(PresetError::Unknown(spec.to_string())),
    };
    Ok(Preset { name: spec.to_string(), kind })
}

impl Preset {
    pub fn operad(&self) -> Option<&MonomialOperadPresentation> {
        match &self.kind {
            PresetKind::Operad(p) => Some(p),
            _ => None,
        }
    }

    /// What the preset's dims are indexed by.
    pub fn index_kind(&self) -> IndexKind {
        match &self.kind {
            PresetKind::Operad(_) | PresetKind::Closed(ClosedFormSeries::FloorPower(_)) => IndexKind::Arity,
            PresetKind::Avoidance46 => IndexKind::Height,
            _ => IndexKind::Degree,
        }
    }

    /// Dimensions at indices `0..=max_index`. Operad presets are counted by
    /// arity with the given engine.
    pub fn dims(&self, max_index: usize, engine: Engine) -> Result<DimSeries, PresetError> {
        Ok(match &self.kind {
            PresetKind::Operad(p) => p.dim_by_arity(max_index, engine, None)?,
            PresetKind::Closed(c) => c.dims(max_index)?,
            PresetKind::Avoidance46 => closed_set_counts(&example46_system(max_index), max_index),
            PresetKind::SquareGaps => {
                let values = (0..=max_index as u64)
                    .map(|n| if in_square_gap(n) { BigUint::zero() } else { BigUint::one() })
                    .collect();
                DimSeries::new(values, IndexKind::Degree)
            }
        })
    }

    /// A monomial algebra whose Hilbert series matches this preset up to
    /// `max_degree`, where one exists.
    pub fn algebra_model(&self, max_degree: usize) -> Result<Option<MonomialAlgebraPresentation>, PresetError> {
        let PresetKind::Closed(c) = &self.kind else {
            return Ok(self.name.strip_prefix("ex53-").and_then(|w| w.parse::<u8>().ok()).map(ex53_algebra));
        };
        Ok(match c {
            ClosedFormSeries::Warfield(r) => Some(warfield_model(r, max_degree)?),
            ClosedFormSeries::Example62 => Some(example62_model(max_degree)?),
            ClosedFormSeries::FreeAlgebra(d) => Some(MonomialAlgebraPresentation::numbered(*d, vec![])?),
            ClosedFormSeries::PolynomialRing(d) if *d >= 1 => {
                let forbidden = (0..*d).flat_map(|i| (0..i).map(move |j| vec![i, j])).collect();
                Some(MonomialAlgebraPresentation::numbered(*d, forbidden)?)
            }
            _ => None,
        })
    }
}

/// `n ∈ [m², m² + m]` for some `m ≥ 1`.
pub fn in_square_gap(n: u64) -> bool {
    let m = n.isqrt();
    m >= 1 && n <= m * m + m
}
