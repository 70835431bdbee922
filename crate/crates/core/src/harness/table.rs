//! Numeric tables and their CSV form.

use std::path::Path;

use crate::error::{Error, Result};

/// Column-labelled numeric table; the first column is the sweep axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    /// Values of the named column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// CSV text: header row, comma separated, LF line endings, numbers with
    /// 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).expect("writing to memory");
        for row in &self.rows {
            w.write_record(row.iter().map(|&v| format_g17(v))).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV is ASCII")
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|source| Error::Io { path: path.display().to_string(), source })
    }

    /// Parses text produced by [`Table::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let bad = |e: csv::Error| Error::config(format!("malformed table: {e}"));
        let columns = r.headers().map_err(bad)?.iter().map(str::to_string).collect();
        let mut table = Table::new(columns);
        for rec in r.records() {
            let rec = rec.map_err(bad)?;
            let row = rec
                .iter()
                .map(|v| v.parse::<f64>().map_err(|_| Error::config(format!("not a number: `{v}`"))))
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        Ok(table)
    }
}

/// `%.17g` formatting: shortest of fixed and scientific notation with 17
/// significant digits and trailing zeros removed.
pub fn format_g17(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
