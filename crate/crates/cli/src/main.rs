//! `oplab`: dimension counts, series analysis and growth checks for
//! nonsymmetric monomial operads.

mod emit;
mod source;

use std::fmt;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use oplab_core::constructions::{min_envelope_dims, operadize, symmetric_envelope_dims};
use oplab_core::operad::{enumerate_irr, gap_dichotomy_check, sweep};
use oplab_core::presets::CATALOG;
use oplab_core::series::{
    exponential_transform, fit_rational, gk_estimate, guess_holonomic, zero_run_report, ZeroRunReport,
    DEFAULT_TAIL_FRACTION,
};
use oplab_core::{DimSeries, Engine, TreeOrder, WordOrder, WordOrderKind};
use serde_json::json;

use emit::{Emit, Table};
use source::{resolve, Source};

/// Marks errors caused by bad input rather than by a failed computation.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser)]
#[command(name = "oplab", version, about = "Nonsymmetric monomial operads: dimensions, series and growth")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Presentation file, algebra file, CSV file, or preset name.
    #[arg(long, alias = "presentation")]
    source: Option<String>,
    /// Preset name (see preset-list).
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Copy, Clone, ValueEnum, PartialEq, Eq)]
enum EngineArg {
    Brute,
    Dp,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Brute => Engine::Brute,
            EngineArg::Dp => Engine::ProfileDp,
        }
    }
}

#[derive(Copy, Clone, ValueEnum, PartialEq, Eq)]
enum EnvelopeKind {
    Min,
    Sym,
}

#[derive(Copy, Clone, ValueEnum, PartialEq, Eq)]
enum IndexBy {
    Arity,
    Weight,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension sequence of a presentation, algebra, preset or CSV.
    Dims {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, alias = "max", alias = "max-index")]
        max_arity: Option<usize>,
        /// Count operad normal forms by weight instead of arity.
        #[arg(long, value_enum, default_value = "arity")]
        by: IndexBy,
        #[arg(long, value_enum, default_value = "dp")]
        engine: EngineArg,
        /// Weight cap, required for arity counts with unary generators.
        #[arg(long)]
        weight_cap: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
    },
    /// Generating series coefficients (optionally exponential).
    Series {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, alias = "N")]
        max: Option<usize>,
        /// Divide coefficient n by n!.
        #[arg(long)]
        exponential: bool,
        #[arg(long, value_enum, default_value = "dp")]
        engine: EngineArg,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
    },
    /// GK-dimension estimates from partial sums.
    Gk {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long = "N", alias = "max")]
        n: Option<usize>,
        /// Fraction of the window used for the tail slope.
        #[arg(long, default_value_t = DEFAULT_TAIL_FRACTION)]
        tail: f64,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
    },
    /// Search for a recurrence with polynomial coefficients.
    Guess {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, alias = "N")]
        max: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_order: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long)]
        exponential: bool,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
    },
    /// Fit a rational generating function.
    Fit {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, alias = "N")]
        max: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
    },
    /// Maximal runs of zero coefficients.
    Zeros {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, alias = "N")]
        max: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
    },
    /// Weight counts and the linear-growth criterion of an operad.
    Gapcheck {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value_t = 30)]
        max_weight: usize,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
    },
    /// Every single-binary-generator presentation with relations of weight <= W.
    Sweep {
        #[arg(long, short = 'W', default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=3))]
        max_relation_weight: u8,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u16).range(6..=40))]
        horizon: u16,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
    },
    /// Operadization of a monomial algebra; prints the presentation.
    Operadize {
        /// Algebra file ("var" and "forbid" lines).
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        preset: Option<String>,
        /// Degree bound for preset models that depend on it.
        #[arg(long, default_value_t = 30)]
        max_degree: usize,
        /// Write the presentation here instead of stdout.
        #[arg(long, alias = "emit")]
        out: Option<String>,
    },
    /// Min-envelope or symmetric-envelope dimension profile of an algebra.
    Envelope {
        #[arg(long, value_enum)]
        kind: EnvelopeKind,
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, alias = "max")]
        max_index: usize,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
    },
    /// Normal forms of an operad presentation, sorted by a tree order.
    Irr {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
        #[arg(long, value_enum, default_value = "deglex")]
        order: OrderArg,
        /// Generator ids in ascending rank, comma separated.
        #[arg(long, value_delimiter = ',')]
        rank: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
    },
    /// List named presets.
    PresetList,
}

#[derive(Copy, Clone, ValueEnum, PartialEq, Eq)]
enum OrderArg {
    Deglex,
    Degrevlex,
}

fn dims_table(title: &str, src: &Source, d: &DimSeries, engine: Option<Engine>) -> Table {
    let mut t = Table::from_dims(title, d);
    t.meta("source", json!(src.label));
    t.meta("presentation_hash", json!(src.hash));
    t.meta("index_kind", json!(d.index_kind.as_str()));
    t.meta("horizon", json!(d.truncation()));
    t.meta("exact", json!(d.exact));
    if let Some(e) = engine {
        t.meta("engine", json!(if e == Engine::Brute { "brute" } else { "dp" }));
    }
    t
}

fn engine_name(src: &Source, e: Engine) -> Option<Engine> {
    src.operad().map(|_| e)
}

fn zero_table(src: &Source, r: &ZeroRunReport) -> Table {
    let mut t = Table::new("zero_runs", &["start", "end", "length"]);
    for &(i, j) in &r.runs {
        t.row(vec![i.to_string(), j.to_string(), (j - i + 1).to_string()]);
    }
    t.meta("source", json!(src.label));
    t.meta("window", json!(r.window));
    t.meta("max_run", json!(r.max_run));
    t.meta("growing", json!(r.growing));
    t.meta("note", json!(ZeroRunReport::LABEL));
    t
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Dims { src, max_arity, by, engine, weight_cap, emit } => {
            let s = resolve(src.source.as_deref(), src.preset.as_deref())?;
            let d = match by {
                IndexBy::Arity => s.dims(max_arity, engine.into(), weight_cap)?,
                IndexBy::Weight => {
                    let op = s.operad().ok_or_else(|| anyhow!(UsageError("--by weight needs an operad".into())))?;
                    let max = max_arity.ok_or_else(|| anyhow!(UsageError("--max-arity is required".into())))?;
                    match engine {
                        EngineArg::Dp => op.dim_by_weight(max),
                        EngineArg::Brute => op.dim_by_weight_brute(max),
                    }
                }
            };
            emit.print(&dims_table("dims", &s, &d, engine_name(&s, engine.into())));
        }
        Command::Series { src, max, exponential, engine, emit } => {
            let s = resolve(src.source.as_deref(), src.preset.as_deref())?;
            let mut w = s.series(max, engine.into())?;
            if exponential {
                w = exponential_transform(&w);
            }
            let mut t = Table::from_series("series", &w);
            t.meta("source", json!(s.label));
            t.meta("presentation_hash", json!(s.hash));
            t.meta("truncation", json!(w.truncation()));
            t.meta("exponential", json!(exponential));
            emit.print(&t);
        }
        Command::Gk { src, n, tail, emit } => {
            let s = resolve(src.source.as_deref(), src.preset.as_deref())?;
            let d = s.dims(n, Engine::ProfileDp, None)?;
            let r = gk_estimate(&d, tail)?;
            let mut t = Table::new(
                "gk",
                &[
                    "N",
                    "window_start",
                    "window_end",
                    "pointwise_estimate",
                    "slope_estimate",
                    "limsup_estimate",
                    "exp_flag",
                ],
            );
            t.row(vec![
                r.truncation.to_string(),
                r.window.0.to_string(),
                r.window.1.to_string(),
                format!("{:.6}", r.pointwise),
                r.slope.map_or("NA".into(), |x| format!("{x:.6}")),
                format!("{:.6}", r.limsup),
                r.exp_flag.to_string(),
            ]);
            t.meta("source", json!(s.label));
            t.meta("presentation_hash", json!(s.hash));
            t.meta("note", json!("floating-point estimates over a finite window"));
            emit.print(&t);
        }
        Command::Guess { src, max, max_order, max_degree, exponential, emit } => {
            let s = resolve(src.source.as_deref(), src.preset.as_deref())?;
            let mut w = s.series(max, Engine::ProfileDp)?;
            if exponential {
                w = exponential_transform(&w);
            }
            let found = guess_holonomic(&w, max_order, max_degree)?;
            let mut t = Table::new("guess", &["order", "degree", "recurrence", "fit_window", "holdout_window"]);
            t.meta("source", json!(s.label));
            t.meta("truncation", json!(w.truncation()));
            t.meta("max_order", json!(max_order));
            t.meta("max_degree", json!(max_degree));
            match found {
                Some(c) => {
                    t.row(vec![
                        c.order.to_string(),
                        c.degree.to_string(),
                        c.to_string(),
                        format!("{}..{}", c.fit_window.0, c.fit_window.1),
                        format!("{}..{}", c.holdout_window.0, c.holdout_window.1),
                    ]);
                    t.meta("found", json!(true));
                }
                None => {
                    t.meta("found", json!(false));
                    t.message = Some(format!(
                        "no recurrence found at bounds (R={max_order}, D={max_degree}, N={}); this is not a proof that none exists",
                        w.truncation()
                    ));
                }
            }
            emit.print(&t);
        }
        Command::Fit { src, max, emit } => {
            let s = resolve(src.source.as_deref(), src.preset.as_deref())?;
            let w = s.series(max, Engine::ProfileDp)?;
            let mut t = Table::new("fit", &["numerator", "denominator", "fit_len", "truncation"]);
            t.meta("source", json!(s.label));
            t.meta("truncation", json!(w.truncation()));
            match fit_rational(&w) {
                Some(f) => {
                    t.row(vec![
                        oplab_core::series::format_polynomial(&f.numerator, "z"),
                        oplab_core::series::format_polynomial(&f.denominator, "z"),
                        f.fit_len.to_string(),
                        f.truncation.to_string(),
                    ]);
                    t.meta("found", json!(true));
                }
                None => {
                    t.meta("found", json!(false));
                    t.message = Some(format!("no rational function fits the window (N={})", w.truncation()));
                }
            }
            emit.print(&t);
        }
        Command::Zeros { src, max, emit } => {
            let s = resolve(src.source.as_deref(), src.preset.as_deref())?;
            let w = s.series(max, Engine::ProfileDp)?;
            emit.print(&zero_table(&s, &zero_run_report(&w)));
        }
        Command::Gapcheck { src, max_weight, emit } => {
            let s = resolve(src.source.as_deref(), src.preset.as_deref())?;
            let op =
                s.operad().ok_or_else(|| anyhow!(UsageError(format!("{} is not an operad presentation", s.label))))?;
            let r = gap_dichotomy_check(op, max_weight)?;
            let mut t = Table::new("gapcheck", &["weight", "count", "partial_sum"]);
            for (n, (c, p)) in r.weight_counts.values.iter().zip(&r.partial_sums.values).enumerate() {
                t.row(vec![n.to_string(), c.to_string(), p.to_string()]);
            }
            t.meta("source", json!(s.label));
            t.meta("presentation_hash", json!(s.hash));
            t.meta("horizon", json!(max_weight));
            t.meta("criterion_d", json!(r.criterion_d));
            t.meta("growth_class", json!(r.growth_class.as_str()));
            if let Some(f) = &r.fit {
                t.meta("fit_slope_estimate", json!(f.a));
                t.meta("fit_intercept_estimate", json!(f.b));
                t.meta("fit_first_violation", json!(f.first_violation));
            }
            emit.print(&t);
        }
        Command::Sweep { max_relation_weight, horizon, emit } => {
            let s = sweep(max_relation_weight as usize, horizon as usize)?;
            let mut t =
                Table::new("sweep", &["key", "relations", "criterion_d", "growth_class", "tail_exponent_estimate"]);
            for r in &s.rows {
                t.row(vec![
                    r.key.to_string(),
                    r.relations.join(" "),
                    r.criterion_d.map_or("none".into(), |d| d.to_string()),
                    r.growth_class.as_str().into(),
                    r.tail_exponent.map_or("NA".into(), |x| format!("{x:.4}")),
                ]);
            }
            t.meta("max_relation_weight", json!(s.max_relation_weight));
            t.meta("horizon", json!(s.horizon));
            t.meta("candidates", json!(s.candidates));
            t.meta("presentations", json!(s.rows.len()));
            t.meta("intermediate_rows", json!(s.intermediate_rows().len()));
            t.meta("dichotomy_holds", json!(s.dichotomy_holds()));
            emit.print(&t);
        }
        Command::Operadize { algebra, preset, max_degree, out } => {
            let s = resolve(algebra.as_deref(), preset.as_deref())?;
            let a = s
                .algebra(max_degree)?
                .ok_or_else(|| anyhow!(UsageError(format!("{} is not a monomial algebra", s.label))))?;
            let q = operadize(&a)?.with_name(format!("operadization of {}", s.label));
            match out {
                Some(path) => std::fs::write(&path, q.to_text())?,
                None => print!("{}", q.to_text()),
            }
        }
        Command::Envelope { kind, src, max_index, emit } => {
            let s = resolve(src.source.as_deref(), src.preset.as_deref())?;
            let a = s.dims(Some(max_index.saturating_sub(1)), Engine::ProfileDp, None)?;
            let prof = match kind {
                EnvelopeKind::Min => min_envelope_dims(&a)?,
                EnvelopeKind::Sym => symmetric_envelope_dims(&a)?,
            };
            let mut t = dims_table("envelope", &s, &prof.dims, None);
            t.meta("kind", json!(if kind == EnvelopeKind::Min { "min" } else { "sym" }));
            emit.print(&t);
        }
        Command::Irr { src, max_weight, order, rank, emit } => {
            let s = resolve(src.source.as_deref(), src.preset.as_deref())?;
            let op =
                s.operad().ok_or_else(|| anyhow!(UsageError(format!("{} is not an operad presentation", s.label))))?;
            let alphabet = op.alphabet();
            let kind = match order {
                OrderArg::Deglex => WordOrderKind::DegLex,
                OrderArg::Degrevlex => WordOrderKind::DegRevLex,
            };
            let ids: Vec<String> = match rank {
                Some(r) => r,
                None => alphabet.generators().iter().map(|g| g.id().to_string()).collect(),
            };
            let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
            let base = WordOrder::from_ids(kind, alphabet, &ids).map_err(|e| anyhow!(UsageError(e.to_string())))?;
            let ord = TreeOrder::new(base);
            let mut t = Table::new("irr", &["weight", "arity", "monomial", "path"]);
            for level in enumerate_irr(op, max_weight) {
                let mut level = level;
                level.sort_by(|x, y| ord.compare(x, y));
                for m in &level {
                    t.row(vec![
                        m.weight().to_string(),
                        m.arity().to_string(),
                        alphabet.format_monomial(m),
                        alphabet.format_path(&m.path_sequence()),
                    ]);
                }
            }
            t.meta("source", json!(s.label));
            t.meta("presentation_hash", json!(s.hash));
            t.meta("order", json!(format!("{:?}", kind).to_lowercase()));
            t.meta("rank", json!(ids));
            emit.print(&t);
        }
        Command::PresetList => {
            for (name, desc) in CATALOG {
                println!("{name}\t{desc}");
            }
        }
    }
    Ok(())
}

/// Errors caused by what the user asked for rather than by the computation.
fn is_usage(e: &anyhow::Error) -> bool {
    use oplab_core::series::SeriesError;
    use oplab_core::OperadError;
    e.downcast_ref::<UsageError>().is_some()
        || matches!(
            e.downcast_ref::<OperadError>(),
            Some(OperadError::NeedsWeightCap | OperadError::HorizonTooShort { .. } | OperadError::Parse { .. })
        )
        || matches!(e.downcast_ref::<SeriesError>(), Some(SeriesError::WindowTooShort { .. }))
        || e.downcast_ref::<oplab_core::presets::PresetError>().is_some()
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("OPLAB_THREADS") {
        let n: usize = match v.trim().parse() {
            Ok(n) if n >= 1 => n,
            _ => bail!(UsageError(format!("OPLAB_THREADS must be a positive integer, got '{v}'"))),
        };
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_usage(&e) {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
