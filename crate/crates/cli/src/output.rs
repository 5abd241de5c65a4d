//! Report formatting and run manifests.

use std::io::Write;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use spinor_core::hilbert::k_fixture_text;
use spinor_core::poset::{Label, Vertex, COVER_TABLE};

pub const SCHEMA: u32 = 1;

/// Output format selected by `--format`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// The result of one subcommand.
pub struct Report {
    pub command: &'static str,
    /// Fields of the JSON object, in output order.
    pub body: Map<String, Value>,
    /// Truncation bounds and other numeric limits in effect.
    pub bounds: Map<String, Value>,
    /// Column names of the tabular view used by CSV and text output.
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Set when a checked identity does not hold.
    pub defect: bool,
}

impl Report {
    pub fn new(command: &'static str) -> Report {
        Report { command, body: Map::new(), bounds: Map::new(), header: Vec::new(), rows: Vec::new(), defect: false }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Report {
        self.body.insert(key.to_string(), value.into());
        self
    }

    pub fn bound(&mut self, key: &str, value: impl Into<Value>) -> &mut Report {
        self.bounds.insert(key.to_string(), value.into());
        self
    }

    pub fn table<S: ToString>(&mut self, header: &[S], rows: Vec<Vec<String>>) -> &mut Report {
        self.header = header.iter().map(|h| h.to_string()).collect();
        self.rows = rows;
        self
    }

    /// A two-column table of the scalar body fields.
    pub fn key_value_table(&mut self) -> &mut Report {
        let rows = self
            .body
            .iter()
            .filter(|(_, v)| !v.is_array() && !v.is_object())
            .map(|(k, v)| vec![k.clone(), scalar_text(v)])
            .collect();
        self.table(&["field", "value"], rows)
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Canonical text of the fixture tables: cover edges, the embedding `f` and
/// the `K` matrix with its base series.
pub fn fixture_text() -> String {
    let mut s = String::from("covers\n");
    for (lo, hi, shift) in COVER_TABLE {
        s.push_str(&format!("{} {} {shift}\n", lo.name(), hi.name()));
    }
    s.push_str("f\n");
    for l in Label::ALL {
        let (x, y) = Vertex::new(l, 0).f_embed();
        s.push_str(&format!("{} {x} {y}\n", l.name()));
    }
    s.push_str("K\n");
    s.push_str(&k_fixture_text());
    s
}

/// Git-style blob hash (`sha256("blob <len>\0" + content)`) of the fixtures.
pub fn fixture_hash() -> String {
    let text = fixture_text();
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", text.len()).as_bytes());
    h.update(text.as_bytes());
    hex::encode(h.finalize())
}

pub fn manifest(report: &Report, arguments: &[String]) -> Value {
    json!({
        "command": report.command,
        "arguments": arguments,
        "bounds": report.bounds,
        "fixture_hash": fixture_hash(),
    })
}

pub fn render(report: &Report, format: Format, manifest: Option<Value>) -> String {
    match format {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("schema".into(), SCHEMA.into());
            obj.insert("command".into(), report.command.into());
            for (k, v) in &report.body {
                obj.insert(k.clone(), v.clone());
            }
            if let Some(m) = manifest {
                obj.insert("manifest".into(), m);
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.header).expect("in-memory writer");
            for r in &report.rows {
                w.write_record(r).expect("in-memory writer");
            }
            if let Some(m) = manifest {
                w.write_record(["manifest", &m.to_string()]).expect("in-memory writer");
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 records")
        }
        Format::Text => {
            let mut rows = vec![report.header.clone()];
            rows.extend(report.rows.iter().cloned());
            let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
            let widths: Vec<usize> =
                (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
            let mut out = String::new();
            for r in rows {
                let cells: Vec<String> =
                    r.iter().enumerate().map(|(c, s)| format!("{s}{}", " ".repeat(widths[c] - s.chars().count()))).collect();
                out.push_str(cells.join("  ").trim_end());
                out.push('\n');
            }
            if let Some(m) = manifest {
                out.push_str(&format!("manifest {m}\n"));
            }
            out
        }
    }
}

pub fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}
