//! Tables, metadata and their CSV / JSON encodings.
//!
//! Floats are written with 17 significant digits so they parse back to the
//! same `f64`. Non-finite values become empty CSV fields and JSON `null`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{Map, Number, Value};

use crate::args::Format;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<u8> for Cell {
    fn from(n: u8) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(b.to_string())
    }
}

/// `d.ddddddddddddddddde+X`, with the exponent sign always present.
pub fn float_text(x: f64) -> Option<String> {
    x.is_finite().then(|| {
        let text = format!("{x:.16e}");
        match text.split_once('e') {
            Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
            _ => text,
        }
    })
}

pub fn number(x: f64) -> Value {
    match float_text(x) {
        Some(text) => Value::Number(text.parse::<Number>().expect("formatted float is a JSON number")),
        None => Value::Null,
    }
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Float(x) => float_text(*x).unwrap_or_default(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(n) => Value::from(*n),
            Cell::Float(x) => number(*x),
            Cell::Text(s) if s == "true" || s == "false" => Value::Bool(s == "true"),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Key/value metadata in insertion order. `summary` holds results; the rest
/// echoes the run.
#[derive(Debug, Clone, Default)]
pub struct Meta {
    pub entries: Map<String, Value>,
}

impl Meta {
    pub fn insert(&mut self, key: &str, value: impl Into<Value>) {
        self.entries.insert(key.to_string(), value.into());
    }
}

/// Flatten nested objects to `a.b=value` lines.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<String>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}={s}")),
        other => out.push(format!("{prefix}={other}")),
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Write the table to `path` (or stdout). CSV carries only the header and the
/// rows; the metadata then goes to stderr as `# key=value` lines.
pub fn emit(table: &Table, meta: &Meta, format: Format, path: Option<&Path>) -> Result<()> {
    let mut out = sink(path)?;
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(&mut out);
            writer.write_record(&table.columns)?;
            for row in &table.rows {
                writer.write_record(row.iter().map(Cell::csv_field))?;
            }
            writer.flush()?;
            drop(writer);
            let mut lines = Vec::new();
            flatten("", &Value::Object(meta.entries.clone()), &mut lines);
            let mut err = io::stderr().lock();
            for line in lines {
                writeln!(err, "# {line}")?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = table
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_string(), v.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            let mut top = Map::new();
            top.insert("meta".into(), Value::Object(meta.entries.clone()));
            top.insert("rows".into(), Value::Array(rows));
            serde_json::to_writer_pretty(&mut out, &Value::Object(top))?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}
