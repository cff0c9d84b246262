//! Line-oriented records in human, CSV and JSON form.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `key=value` pairs, one record per line.
    Human,
    /// Header line whenever the record kind changes, then rows.
    Csv,
    /// One JSON object per line.
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i128),
    Real(f64),
    Bool(bool),
    Text(String),
    /// Arbitrary-size integer as a decimal string.
    Big(String),
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v.into())
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i128)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Real(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_owned())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub kind: &'static str,
    pub fields: Vec<(&'static str, Field)>,
}

impl Record {
    pub fn new(kind: &'static str) -> Self {
        Record {
            kind,
            fields: Vec::new(),
        }
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Field>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }
}

/// Rounds to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("formatted float reparses")
}

/// Shortest decimal that round-trips the value rounded to `digits`.
pub fn format_real(x: f64, digits: usize) -> String {
    let r = round_sig(x, digits);
    if r.is_nan() {
        return "nan".into();
    }
    if r.is_infinite() {
        return if r > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = r.abs();
    if a != 0.0 && !(1e-6..1e16).contains(&a) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn plain(field: &Field, digits: usize) -> String {
    match field {
        Field::Int(v) => v.to_string(),
        Field::Real(v) => format_real(*v, digits),
        Field::Bool(v) => v.to_string(),
        Field::Text(s) | Field::Big(s) => s.clone(),
    }
}

fn json_value(field: &Field, digits: usize) -> Value {
    match field {
        Field::Int(v) => match i64::try_from(*v) {
            Ok(i) => Value::from(i),
            Err(_) => Value::String(v.to_string()),
        },
        Field::Real(v) => serde_json::Number::from_f64(round_sig(*v, digits))
            .map(Value::Number)
            .unwrap_or(Value::Null),
        Field::Bool(v) => Value::Bool(*v),
        Field::Text(s) | Field::Big(s) => Value::String(s.clone()),
    }
}

/// Writes records in one format; CSV headers are emitted on kind changes.
pub struct RecordWriter<'a> {
    out: &'a mut dyn Write,
    format: Format,
    digits: usize,
    last_kind: Option<&'static str>,
}

impl<'a> RecordWriter<'a> {
    pub fn new(out: &'a mut dyn Write, format: Format, digits: usize) -> Self {
        RecordWriter {
            out,
            format,
            digits,
            last_kind: None,
        }
    }

    pub fn write(&mut self, rec: &Record) -> io::Result<()> {
        match self.format {
            Format::Human => {
                let mut line = rec.kind.to_owned();
                for (k, v) in &rec.fields {
                    line.push(' ');
                    line.push_str(k);
                    line.push('=');
                    line.push_str(&plain(v, self.digits));
                }
                writeln!(self.out, "{line}")
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
                if self.last_kind != Some(rec.kind) {
                    w.write_record(
                        std::iter::once("record").chain(rec.fields.iter().map(|(k, _)| *k)),
                    )?;
                }
                let row: Vec<String> = std::iter::once(rec.kind.to_owned())
                    .chain(rec.fields.iter().map(|(_, v)| plain(v, self.digits)))
                    .collect();
                w.write_record(&row)?;
                let bytes = w.into_inner().map_err(|e| e.into_error())?;
                self.out.write_all(&bytes)
            }
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("record".into(), Value::String(rec.kind.into()));
                for (k, v) in &rec.fields {
                    obj.insert((*k).into(), json_value(v, self.digits));
                }
                writeln!(self.out, "{}", Value::Object(obj))
            }
        }?;
        self.last_kind = Some(rec.kind);
        Ok(())
    }
}
