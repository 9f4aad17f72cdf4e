//! Report rendering. JSON objects come out with sorted keys and a
//! `"schema": 1` field; CSV carries a fixed column subset per command.

use serde_json::{json, Map, Value};
use tvsum_core::Real;

pub const SCHEMA: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Decimal rendering of reals at the significance the precision supports.
#[derive(Clone, Copy, Debug)]
pub struct Digits(pub usize);

impl Digits {
    pub fn for_precision(bits: usize) -> Self {
        Digits(((bits as f64) * std::f64::consts::LOG10_2).floor() as usize)
    }

    pub fn real(self, x: &Real) -> Value {
        Value::String(x.to_sci_string(self.0))
    }

    pub fn text(self, x: &Real) -> String {
        x.to_sci_string(self.0)
    }

    pub fn opt(self, x: Option<&Real>) -> Value {
        x.map_or(Value::Null, |x| self.real(x))
    }
}

/// Header plus rows; every cell is already text.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// A one-row table of the named top-level JSON fields.
    pub fn from_fields(body: &Map<String, Value>, fields: &[&'static str]) -> Self {
        let mut t = Table::new(fields);
        t.push(fields.iter().map(|f| cell(body.get(*f).unwrap_or(&Value::Null))).collect());
        t
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A finished command result.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub body: Map<String, Value>,
    pub table: Table,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut body = self.body.clone();
                body.insert("schema".into(), json!(SCHEMA));
                body.insert("command".into(), json!(self.command));
                let mut s = serde_json::to_string_pretty(&Value::Object(body)).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header).expect("writing to memory");
                for r in &self.table.rows {
                    w.write_record(r).expect("writing to memory");
                }
                String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV of UTF-8 cells")
            }
        }
    }
}

/// Machine-readable failure record. Always JSON, whatever the format flag.
pub fn error_record(kind: &str, message: &str) -> String {
    let v = json!({ "schema": SCHEMA, "error": { "kind": kind, "message": message } });
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}
