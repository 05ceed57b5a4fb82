//! Resolving `--source` / `--preset` / stdin into something countable.

use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use oplab_core::algebra::MonomialAlgebraPresentation;
use oplab_core::presets::{self, Preset};
use oplab_core::series::SeriesWindow;
use oplab_core::{DimSeries, Engine, IndexKind, MonomialOperadPresentation};
use sha2::{Digest, Sha256};

use crate::UsageError;

pub enum Loaded {
    Operad(MonomialOperadPresentation),
    Algebra(MonomialAlgebraPresentation),
    Preset(Preset),
    /// Coefficients read from CSV, starting at index 0.
    Series(SeriesWindow),
}

pub struct Source {
    pub label: String,
    pub loaded: Loaded,
    /// SHA-256 of the canonical text of the input.
    pub hash: String,
}

fn sha(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

fn from_preset(name: &str) -> Result<Source> {
    let p = presets::lookup(name).map_err(|e| usage(e.to_string()))?;
    let hash = match p.operad() {
        Some(op) => sha(&op.to_text()),
        None => sha(&format!("preset {}", p.name)),
    };
    Ok(Source { label: p.name.clone(), loaded: Loaded::Preset(p), hash })
}

fn first_keyword(text: &str) -> Option<&str> {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).and_then(|l| l.split_whitespace().next())
}

fn parse_coeff(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (BigInt, BigInt) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            (b != BigInt::from(0)).then(|| BigRational::new(a, b))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Reads `n,value[,...]` rows; a header row and `#` comment lines are
/// skipped. Indices must run 0, 1, 2, ... without gaps.
pub fn parse_csv(text: &str) -> Result<SeriesWindow> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut coeffs = Vec::new();
    for (row, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| usage(format!("CSV row {}: {e}", row + 1)))?;
        let line = rec.position().map_or(row + 1, |p| p.line() as usize);
        let (Some(n), Some(v)) = (rec.get(0), rec.get(1)) else {
            return Err(usage(format!(
                "line {line}: expected 'n,value', got '{}'",
                rec.iter().collect::<Vec<_>>().join(",")
            )));
        };
        let Ok(n) = n.parse::<usize>() else {
            if coeffs.is_empty() && row == 0 {
                continue;
            }
            return Err(usage(format!("line {line}: bad index '{n}'")));
        };
        if n != coeffs.len() {
            return Err(usage(format!("line {line}: expected index {}, got {n}", coeffs.len())));
        }
        let v = parse_coeff(v).ok_or_else(|| usage(format!("line {line}: bad coefficient '{v}'")))?;
        coeffs.push(v);
    }
    if coeffs.is_empty() {
        return Err(usage("no coefficients in CSV input"));
    }
    Ok(SeriesWindow::new(coeffs))
}

fn from_text(label: String, text: &str) -> Result<Source> {
    let hash = sha(text);
    let loaded = match first_keyword(text) {
        Some("generator" | "relation" | "name") => {
            Loaded::Operad(MonomialOperadPresentation::parse(text).map_err(|e| usage(format!("{label}: {e}")))?)
        }
        Some("var" | "forbid") => {
            Loaded::Algebra(MonomialAlgebraPresentation::parse(text).map_err(|e| usage(format!("{label}: {e}")))?)
        }
        _ => Loaded::Series(parse_csv(text).with_context(|| format!("reading {label}"))?),
    };
    Ok(Source { label, loaded, hash })
}

/// `--preset` wins; then `--source` (a file path, or a preset name if no
/// such file exists); otherwise CSV on stdin.
pub fn resolve(source: Option<&str>, preset: Option<&str>) -> Result<Source> {
    if let Some(p) = preset {
        return from_preset(p);
    }
    match source {
        Some(s) if Path::new(s).is_file() => {
            let text = std::fs::read_to_string(s).map_err(|e| usage(format!("{s}: {e}")))?;
            from_text(s.to_string(), &text)
        }
        Some(s) => from_preset(s.strip_prefix("preset:").unwrap_or(s)),
        None => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
            from_text("stdin".to_string(), &text)
        }
    }
}

impl Source {
    pub fn operad(&self) -> Option<&MonomialOperadPresentation> {
        match &self.loaded {
            Loaded::Operad(p) => Some(p),
            Loaded::Preset(p) => p.operad(),
            _ => None,
        }
    }

    pub fn algebra(&self, max_degree: usize) -> Result<Option<MonomialAlgebraPresentation>> {
        Ok(match &self.loaded {
            Loaded::Algebra(a) => Some(a.clone()),
            Loaded::Preset(p) => p.algebra_model(max_degree)?,
            _ => None,
        })
    }

    /// Dimensions up to `max`; required except for CSV input.
    pub fn dims(&self, max: Option<usize>, engine: Engine, weight_cap: Option<usize>) -> Result<DimSeries> {
        let need = || max.ok_or_else(|| usage(format!("{}: a maximum index is required", self.label)));
        Ok(match &self.loaded {
            Loaded::Operad(p) => p.dim_by_arity(need()?, engine, weight_cap)?,
            Loaded::Algebra(a) => a.hilbert_dims(need()?),
            Loaded::Preset(p) => match p.operad() {
                Some(op) => op.dim_by_arity(need()?, engine, weight_cap)?,
                None => p.dims(need()?, engine)?,
            },
            Loaded::Series(s) => {
                let s = match max {
                    Some(m) => s.truncated(m),
                    None => s.clone(),
                };
                let values = s
                    .to_dims()
                    .ok_or_else(|| usage(format!("{}: dimensions must be nonnegative integers", self.label)))?;
                DimSeries::new(values, IndexKind::Arity)
            }
        })
    }

    pub fn series(&self, max: Option<usize>, engine: Engine) -> Result<SeriesWindow> {
        match &self.loaded {
            Loaded::Series(s) => Ok(match max {
                Some(m) => s.truncated(m),
                None => s.clone(),
            }),
            _ => Ok(SeriesWindow::from_dims(&self.dims(max, engine, None)?)),
        }
    }
}
