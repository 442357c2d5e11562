//! Number formatting, the CSV/JSON emitters and the bundled CSV reader.

use std::io;

use num_complex::Complex64;
use serde_json::{json, Value};

/// Version of every JSON document written by the CLI.
pub const SCHEMA: u64 = 1;

/// Formats a float with 17 significant digits; non-finite values become
/// `inf`, `-inf` or `nan`, and `-0` is written as `0`.
pub fn fmt(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{:.16e}", x + 0.0)
    }
}

/// A JSON number, or the string spelling of a non-finite value.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x + 0.0).map_or_else(|| Value::String(fmt(x)), Value::Number)
}

/// A complex number as `[re, im]`.
pub fn cnum(z: Complex64) -> Value {
    json!([num(z.re), num(z.im)])
}

/// A cell of an output table.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => fmt(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => num(*x),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
        }
    }
}

/// Rows under a fixed header.
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

    pub fn to_csv(&self) -> io::Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.into_inner().map_err(|e| e.into_error())
    }

    /// `columns` and `rows` members for a JSON document.
    pub fn to_json(&self) -> (Value, Value) {
        let rows = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        (json!(self.columns), Value::Array(rows))
    }
}

/// Writes floats as `{:.16e}` so that JSON and CSV agree digit for digit.
struct Scientific;

impl serde_json::ser::Formatter for Scientific {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
}

pub fn to_json(doc: &Value) -> io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Scientific);
    serde::Serialize::serialize(doc, &mut ser)?;
    buf.push(b'\n');
    Ok(buf)
}

/// A parsed CSV document.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ParsedCsv {
    /// A column parsed as floats (`inf` and `nan` included).
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.headers.iter().position(|h| h == name)?;
        self.rows.iter().map(|r| r[j].parse().ok()).collect()
    }
}

/// Reads back a CSV document written by the CLI.
pub fn read_csv(text: &str) -> csv::Result<ParsedCsv> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers()?.iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|rec| rec.iter().map(String::from).collect()))
        .collect::<csv::Result<_>>()?;
    Ok(ParsedCsv { headers, rows })
}
