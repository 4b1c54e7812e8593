//! Tabular report serialization.
//!
//! CSV files start with `# key: value` metadata lines (schema version,
//! command, resolved config and summary as JSON), then a header row and the
//! data. JSON documents carry the same fields plus `columns` and `rows`.
//! Unstable points are written as `unstable` in CSV and `null` in JSON.

use std::io::Write;

use num_complex::Complex64;
use serde::ser::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::config::Format;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;
pub const SENTINEL: &str = "unstable";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Unstable,
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            // shortest round-trip form, exponent for very large or small values
            Cell::Num(v) => format!("{v:?}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Unstable => SENTINEL.to_string(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Num(v) if v.is_finite() => s.serialize_f64(*v),
            // JSON has no representation for non-finite numbers
            Cell::Num(v) => s.serialize_str(&v.to_string()),
            Cell::Int(v) => s.serialize_u64(*v as u64),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Unstable => s.serialize_none(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Unstable, Cell::Num)
    }
}

/// Two cells, `re` then `im`.
pub fn complex(z: Complex64) -> [Cell; 2] {
    [Cell::Num(z.re), Cell::Num(z.im)]
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub summary: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &'static str, columns: &[&str]) -> Self {
        Self {
            command,
            summary: json!({}),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(
        &self,
        config: &Value,
        format: Format,
        out: &mut dyn Write,
    ) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(config, out),
            Format::Json => self.write_json(config, out),
        }
        .map_err(|e| CliError::Io(e.to_string()))
    }

    fn write_csv(&self, config: &Value, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "# schema_version: {SCHEMA_VERSION}")?;
        writeln!(out, "# command: {}", self.command)?;
        writeln!(out, "# version: {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(out, "# config: {config}")?;
        writeln!(out, "# summary: {}", self.summary)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_field))?;
        }
        w.flush()
    }

    fn write_json(&self, config: &Value, out: &mut dyn Write) -> std::io::Result<()> {
        let doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "config": config,
            "summary": self.summary,
            "columns": self.columns,
            "rows": self.rows,
        });
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }
}
