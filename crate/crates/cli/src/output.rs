//! Report emission: RFC-4180 CSV (default) or JSON lines.
//!
//! Floating values use a fixed 12-significant-digit format so identical
//! invocations produce byte-identical output.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i128),
    UInt(u128),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl From<i128> for Cell {
    fn from(v: i128) -> Self {
        Cell::Int(v)
    }
}
impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v as i128)
    }
}
impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::UInt(v as u128)
    }
}
impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::UInt(v as u128)
    }
}
impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// 12 significant digits, scientific; exact decimal for round values is not
/// needed since all exact quantities go through the integer variants.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Report { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn cell_csv(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::UInt(v) => v.to_string(),
        Cell::Float(v) => fmt_float(*v),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(v) => csv_escape(v),
    }
}

fn cell_json(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::UInt(v) => v.to_string(),
        Cell::Float(v) => fmt_float(*v),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(v) => json_escape(v),
    }
}

pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> io::Result<()> {
    let mut buf = String::new();
    match format {
        Format::Csv => {
            buf.push_str(&report.columns.join(","));
            buf.push('\n');
            for row in &report.rows {
                let line: Vec<String> = row.iter().map(cell_csv).collect();
                buf.push_str(&line.join(","));
                buf.push('\n');
            }
        }
        Format::Json => {
            for row in &report.rows {
                let fields: Vec<String> = report
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, v)| format!("{}:{}", json_escape(k), cell_json(v)))
                    .collect();
                buf.push('{');
                buf.push_str(&fields.join(","));
                buf.push_str("}\n");
            }
        }
    }
    match out {
        Some(path) => File::create(path)?.write_all(buf.as_bytes()),
        None => io::stdout().write_all(buf.as_bytes()),
    }
}
