//! Result tables and their CSV / JSON emission.

use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::config::{Experiment, ExperimentConfig};
use crate::CliError;

pub const VERSION: &str = env!("HOROLAB_GIT_DESCRIBE");

/// One experiment's output: a table and a JSON results object.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub experiment: Experiment,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub results: Map<String, Value>,
    /// Some scheduled `N` exceeded the configured maximum and was clamped.
    pub clamped: bool,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(experiment: Experiment, header: &[&str]) -> Report {
        Report {
            experiment,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            results: Map::new(),
            clamped: false,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Value of `column` in every row where `filter_col == filter_val`.
    pub fn column(&self, column: &str, filter: Option<(&str, &str)>) -> Vec<String> {
        let idx = |name: &str| self.header.iter().position(|h| h == name).expect("known column");
        let c = idx(column);
        self.rows.iter().filter(|r| filter.is_none_or(|(fc, fv)| r[idx(fc)] == fv)).map(|r| r[c].clone()).collect()
    }
}

/// Shortest round-trip decimal; `nan`, `inf`, `-inf` otherwise.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        if x != 0.0 && !(1e-6..1e16).contains(&x.abs()) {
            format!("{x:e}")
        } else {
            format!("{x}")
        }
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Decimal digits of `n`, or `d1.d2d3d4e<exp>` once it has more than 40 digits.
pub fn short_int(n: &num_bigint::BigInt) -> String {
    let s = n.to_string();
    let (sign, digits) = s.strip_prefix('-').map_or(("", s.as_str()), |d| ("-", d));
    if digits.len() <= 40 {
        return s;
    }
    format!("{sign}{}.{}e{}", &digits[..1], &digits[1..4], digits.len() - 1)
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// JSON number, `null` when not finite.
pub fn jnum(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn csv_string(report: &Report) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(&report.header).map_err(|e| CliError::Output(e.to_string()))?;
    for r in &report.rows {
        w.write_record(r).map_err(|e| CliError::Output(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

pub fn summary_json(report: &Report, config: &ExperimentConfig) -> Result<String, CliError> {
    let config_echo = serde_json::to_value(config).map_err(|e| CliError::Output(e.to_string()))?;
    let v = json!({
        "experiment": report.experiment.name(),
        "version": VERSION,
        "seed": config.seed,
        "config": config_echo,
        "results": Value::Object(report.results.clone()),
        "schedule_clamped": report.clamped,
        "notes": report.notes,
    });
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })
}

/// Writes `<dir>/<experiment>.csv` and `<dir>/<experiment>.json`.
pub fn emit(report: &Report, config: &ExperimentConfig, dir: &Path) -> Result<(PathBuf, PathBuf), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io { path: dir.display().to_string(), source: e })?;
    let csv_path = dir.join(format!("{}.csv", report.experiment.name()));
    let json_path = dir.join(format!("{}.json", report.experiment.name()));
    write(&csv_path, &csv_string(report)?)?;
    write(&json_path, &summary_json(report, config)?)?;
    Ok((csv_path, json_path))
}
