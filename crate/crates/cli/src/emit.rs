//! Output tables as CSV, JSON or a gnuplot data block.

use clap::ValueEnum;
use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use oplab_core::dims::ln_big;
use oplab_core::series::SeriesWindow;
use oplab_core::DimSeries;
use serde_json::{json, Map, Value};

#[derive(Copy, Clone, ValueEnum, PartialEq, Eq, Debug)]
pub enum Emit {
    Csv,
    Json,
    Gnuplot,
}

pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Sorted by key, so output is stable.
    pub meta: Map<String, Value>,
    pub message: Option<String>,
}

fn log_n(n: usize, ln_sum: Option<f64>) -> String {
    match ln_sum {
        Some(l) if n >= 2 => format!("{:.6}", l / (n as f64).ln()),
        _ => "NA".to_string(),
    }
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Self {
        Self {
            title: title.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            meta: Map::new(),
            message: None,
        }
    }

    pub fn row(&mut self, r: Vec<String>) {
        self.rows.push(r);
    }

    pub fn meta(&mut self, key: &str, v: Value) {
        self.meta.insert(key.to_string(), v);
    }

    /// Columns `n, dim, partial_sum, log_n_partial_sum`.
    pub fn from_dims(title: &str, d: &DimSeries) -> Self {
        let mut t = Self::new(title, &["n", "dim", "partial_sum", "log_n_partial_sum"]);
        for (n, (v, s)) in d.values.iter().zip(d.partial_sums()).enumerate() {
            let ln = (!s.is_zero()).then(|| ln_big(&s));
            t.row(vec![n.to_string(), v.to_string(), s.to_string(), log_n(n, ln)]);
        }
        t
    }

    /// Columns `n, coeff, partial_sum, log_n_partial_sum`, exact rationals.
    pub fn from_series(title: &str, w: &SeriesWindow) -> Self {
        let mut t = Self::new(title, &["n", "coeff", "partial_sum", "log_n_partial_sum"]);
        for (n, (c, s)) in w.coefficients.iter().zip(w.partial_sums()).enumerate() {
            let ln = s.is_positive().then(|| {
                let num: BigUint = s.numer().magnitude().clone();
                let den: BigUint = s.denom().magnitude().clone();
                ln_big(&num) - ln_big(&den)
            });
            t.row(vec![n.to_string(), c.to_string(), s.to_string(), log_n(n, ln)]);
        }
        t
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        let mut out = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input");
        for (k, v) in &self.meta {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("# {k}: {v}\n"));
        }
        if let Some(m) = &self.message {
            out.push_str(&format!("# {m}\n"));
        }
        out
    }

    fn json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
            .collect();
        let v = json!({
            "command": self.title,
            "columns": self.columns,
            "rows": rows,
            "meta": self.meta,
            "message": self.message,
        });
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }

    fn gnuplot(&self) -> String {
        let mut out = format!("# {}\n$data << EOD\n# {}\n", self.title, self.columns.join(" "));
        for r in &self.rows {
            let cells: Vec<String> =
                r.iter().map(|c| if c.contains(' ') { format!("\"{c}\"") } else { c.clone() }).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out.push_str("EOD\n");
        if self.columns.len() >= 2 {
            out.push_str(&format!("plot $data using 1:2 with linespoints title \"{}\"\n", self.title));
        }
        if let Some(m) = &self.message {
            out.push_str(&format!("# {m}\n"));
        }
        out
    }

    pub fn render(&self, emit: Emit) -> String {
        match emit {
            Emit::Csv => self.csv(),
            Emit::Json => self.json(),
            Emit::Gnuplot => self.gnuplot(),
        }
    }
}

impl Emit {
    pub fn print(self, t: &Table) {
        print!("{}", t.render(self));
    }
}
