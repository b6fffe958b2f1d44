//! Tabular documents and their csv/json encodings.
//!
//! Floats are printed with a fixed number of significant digits (12 in csv,
//! 17 in json) so identical requests give byte-identical output.

use std::io::{self, Write};

use serde_json::{Map, Number, Value};

use crate::args::Format;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Null,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Null, Cell::Float)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Document {
    pub command: String,
    pub request_echo: Vec<(String, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub diagnostics: Vec<(String, Cell)>,
}

impl Document {
    pub fn new(command: &str, columns: &[&'static str]) -> Self {
        Self {
            command: command.to_string(),
            columns: columns.to_vec(),
            ..Default::default()
        }
    }

    pub fn echo(&mut self, key: &str, value: impl Into<Cell>) {
        self.request_echo.push((key.to_string(), value.into()));
    }

    pub fn diagnostic(&mut self, key: &str, value: impl Into<Cell>) {
        self.diagnostics.push((key.to_string(), value.into()));
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => write_json(&self.to_json(), out),
        }
    }

    fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(csv_field))?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        doc.insert("command".into(), Value::from(self.command.clone()));
        doc.insert("request_echo".into(), object(&self.request_echo));
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let pairs: Vec<(String, Cell)> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.clone()))
                    .collect();
                object(&pairs)
            })
            .collect();
        doc.insert("rows".into(), Value::Array(rows));
        doc.insert("diagnostics".into(), object(&self.diagnostics));
        Value::Object(doc)
    }
}

/// Machine-readable error document for json mode.
pub fn error_json(command: &str, kind: &str, message: &str) -> Value {
    let mut err = Map::new();
    err.insert("kind".into(), Value::from(kind));
    err.insert("message".into(), Value::from(message));
    let mut doc = Map::new();
    doc.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    doc.insert("command".into(), Value::from(command));
    doc.insert("error".into(), Value::Object(err));
    Value::Object(doc)
}

pub fn write_json<W: Write>(value: &Value, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)
}

fn object(pairs: &[(String, Cell)]) -> Value {
    Value::Object(pairs.iter().map(|(k, v)| (k.clone(), json_cell(v))).collect())
}

fn json_cell(cell: &Cell) -> Value {
    match cell {
        Cell::Float(v) if v.is_finite() => {
            // arbitrary_precision keeps the literal digits we hand it
            let text = format!("{v:.16e}");
            serde_json::from_str::<Number>(&text)
                .map(Value::Number)
                .unwrap_or(Value::Null)
        }
        Cell::Float(_) | Cell::Null => Value::Null,
        Cell::Int(v) => Value::from(*v),
        Cell::Text(s) => Value::from(s.clone()),
        Cell::Bool(b) => Value::from(*b),
    }
}

fn csv_field(cell: &Cell) -> String {
    match cell {
        Cell::Float(v) if v.is_finite() => format!("{v:.11e}"),
        Cell::Float(v) => v.to_string(),
        Cell::Int(v) => v.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::Null => String::new(),
    }
}
