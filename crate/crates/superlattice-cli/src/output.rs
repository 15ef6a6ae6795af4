//! Deterministic CSV and JSON emission with significant-digit formatting.

use std::fmt::Write as _;

/// Default significant digits; override with SUPERLATTICE_PRECISION (1..=17).
const DEFAULT_PRECISION: usize = 12;

pub fn precision() -> usize {
    match std::env::var("SUPERLATTICE_PRECISION") {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(p) if (1..=17).contains(&p) => p,
            _ => DEFAULT_PRECISION,
        },
        Err(_) => DEFAULT_PRECISION,
    }
}

/// Formats with a fixed number of significant digits, decimal where the
/// magnitude allows, scientific outside [1e-4, 1e15); trailing zeros are
/// trimmed so re-parsing recovers the printed value exactly.
pub fn format_number(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let magnitude = x.abs();
    if !(1e-4..1e15).contains(&magnitude) {
        let formatted = format!("{:.*e}", sig - 1, x);
        return trim_scientific(&formatted);
    }
    let exponent = magnitude.log10().floor() as i64;
    let decimals = (sig as i64 - 1 - exponent).max(0) as usize;
    let formatted = format!("{x:.decimals$}");
    trim_decimal(&formatted)
}

fn trim_decimal(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn trim_scientific(s: &str) -> String {
    match s.split_once('e') {
        Some((mantissa, exponent)) => format!("{}e{exponent}", trim_decimal(mantissa)),
        None => s.to_string(),
    }
}

/// One table cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    fn csv(&self, sig: usize) -> String {
        match self {
            Cell::Num(x) => format_number(*x, sig),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => "nan".to_string(),
        }
    }

    fn json(&self, sig: usize) -> String {
        match self {
            Cell::Num(x) if x.is_finite() => format_number(*x, sig),
            Cell::Num(_) => "null".to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => json_string(s),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => "null".to_string(),
        }
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Row-oriented document: fixed header plus rows, with optional leading
/// comment lines carrying scan metadata in the CSV rendering.
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let sig = precision();
        let mut out = String::new();
        for comment in &self.comments {
            let _ = writeln!(out, "# {comment}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| c.csv(sig)).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let sig = precision();
        let mut out = String::from("[\n");
        for (i, row) in self.rows.iter().enumerate() {
            let fields: Vec<String> = self
                .header
                .iter()
                .zip(row)
                .map(|(key, cell)| format!("{}: {}", json_string(key), cell.json(sig)))
                .collect();
            let _ = write!(out, "  {{{}}}", fields.join(", "));
            out.push_str(if i + 1 < self.rows.len() { ",\n" } else { "\n" });
        }
        out.push_str("]\n");
        out
    }
}

/// Flat single-object document.
pub struct Record {
    pub fields: Vec<(&'static str, Cell)>,
}

impl Record {
    pub fn to_json(&self) -> String {
        let sig = precision();
        let mut out = String::from("{\n");
        for (i, (key, cell)) in self.fields.iter().enumerate() {
            let _ = write!(out, "  {}: {}", json_string(key), cell.json(sig));
            out.push_str(if i + 1 < self.fields.len() { ",\n" } else { "\n" });
        }
        out.push_str("}\n");
        out
    }

    pub fn to_csv(&self) -> String {
        let sig = precision();
        let header: Vec<&str> = self.fields.iter().map(|(k, _)| *k).collect();
        let row: Vec<String> = self.fields.iter().map(|(_, c)| c.csv(sig)).collect();
        format!("{}\n{}\n", header.join(","), row.join(","))
    }
}
