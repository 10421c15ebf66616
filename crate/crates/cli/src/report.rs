//! Experiment reports and their JSON / CSV encodings.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Arithmetic a row was computed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    Float,
}

impl Provenance {
    fn as_str(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::Float => "float",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub version: String,
    pub seed: u64,
    /// Resolved parameters.
    pub params: Value,
    pub rows: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Value>,
    /// Rows whose checked identity or inequality failed.
    pub violations: usize,
    /// Rows whose iterative solve stopped early.
    pub nonconverged: usize,
    pub wall_time_s: f64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl Report {
    pub fn new(experiment: &str, seed: u64, params: &impl Serialize, started: Instant) -> Self {
        Report {
            experiment: experiment.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            params: serde_json::to_value(params).expect("parameters serialize"),
            rows: Vec::new(),
            summary: None,
            violations: 0,
            nonconverged: 0,
            wall_time_s: 0.0,
            started: Some(started),
        }
    }

    /// Appends a row (a JSON object) tagged with its provenance.
    pub fn push(&mut self, provenance: Provenance, row: Value) {
        let mut row = match row {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        row.insert("provenance".into(), provenance.as_str().into());
        self.rows.push(Value::Object(row));
    }

    pub fn flag(&mut self, violated: bool) {
        self.violations += violated as usize;
    }

    pub fn flag_nonconverged(&mut self, nonconverged: bool) {
        self.nonconverged += nonconverged as usize;
    }

    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.wall_time_s = t.elapsed().as_secs_f64();
        }
        self
    }
}

/// 17 significant digits.
fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => i.to_string(),
            (_, Some(u), _) => u.to_string(),
            (_, _, Some(f)) => format_float(f),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Rows as CSV; the header is the sorted union of row keys.
pub fn to_csv(report: &Report) -> Result<String, CliError> {
    let mut keys: Vec<&String> = report
        .rows
        .iter()
        .filter_map(Value::as_object)
        .flat_map(|m| m.keys())
        .collect();
    keys.sort();
    keys.dedup();
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Config(format!("csv: {e}"));
    w.write_record(&keys).map_err(err)?;
    for row in &report.rows {
        let m = row.as_object();
        let cells: Vec<String> = keys
            .iter()
            .map(|k| m.and_then(|m| m.get(*k)).map(csv_cell).unwrap_or_default())
            .collect();
        w.write_record(&cells).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Config(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            Ok(s)
        }
        Format::Csv => to_csv(report),
    }
}

pub fn write(report: &Report, format: Format, output: Option<&Path>) -> Result<(), CliError> {
    let text = render(report, format)?;
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut r = Report::new("averaging", 0, &json!({"p": 2.0}), Instant::now());
        r.push(
            Provenance::Exact,
            json!({"n": 4, "norm": 0.5, "law": 0.1 + 0.2}),
        );
        r.push(Provenance::Float, json!({"n": 8, "note": "a,b"}));
        r.finish()
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let text = render(&r, Format::Json).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn csv_layout() {
        let text = to_csv(&sample()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "law,n,norm,note,provenance");
        assert_eq!(
            lines[1],
            "3.0000000000000004e-1,4,5.0000000000000000e-1,,exact"
        );
        assert_eq!(lines[2], ",8,,\"a,b\",float");
    }
}
