//! CSV / JSON tables with a provenance header.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use crate::config::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Invalid(format!("format = {s:?}: expected csv or json"))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Table { columns: columns.iter().map(|c| c.as_ref().to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Tool version, command and the resolved parameters.
pub struct Provenance {
    pub command: String,
    pub params: Vec<(String, String)>,
}

impl Provenance {
    fn tool(&self) -> String {
        format!("potentia {}", env!("CARGO_PKG_VERSION"))
    }
}

pub fn render(table: &Table, format: Format, prov: &Provenance) -> CliResult<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut out = Vec::new();
            let _ = write!(out, "# {} {}\r\n", prov.tool(), prov.command);
            for (k, v) in &prov.params {
                let _ = write!(out, "# {k} = {v}\r\n");
            }
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
            let io = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(&table.columns).map_err(io)?;
            for r in &table.rows {
                w.write_record(r).map_err(io)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.to_string()))
        }
        Format::Json => {
            let mut meta = Map::new();
            meta.insert("tool".into(), Value::String(prov.tool()));
            meta.insert("command".into(), Value::String(prov.command.clone()));
            let mut params = Map::new();
            for (k, v) in &prov.params {
                params.insert(k.clone(), Value::String(v.clone()));
            }
            meta.insert("config".into(), Value::Object(params));
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| {
                    let mut o = Map::new();
                    for (c, v) in table.columns.iter().zip(r) {
                        o.insert(c.clone(), cell(v));
                    }
                    Value::Object(o)
                })
                .collect();
            let mut doc = Map::new();
            doc.insert("provenance".into(), Value::Object(meta));
            doc.insert("rows".into(), Value::Array(rows));
            let mut s = serde_json::to_vec_pretty(&Value::Object(doc)).map_err(|e| CliError::Io(e.to_string()))?;
            s.push(b'\n');
            Ok(s)
        }
    }
}

/// Numeric and boolean cells become JSON scalars, everything else (including inf) stays a string.
fn cell(v: &str) -> Value {
    if let Ok(i) = v.parse::<i64>() {
        return Value::from(i);
    }
    if let Ok(b) = v.parse::<bool>() {
        return Value::Bool(b);
    }
    v.parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(v.to_string()))
}

pub fn emit(bytes: &[u8], path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
