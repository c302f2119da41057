//! Tabular output as CSV or JSON.
//!
//! CSV floats are written in plain decimal with 17 significant digits, so a
//! value read back parses to the same f64. Lines end in `\n`.

use std::fs;
use std::path::Path;

use serde_json::{Map, Number, Value};

use crate::config::Format;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x.into())
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.into())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Decimal notation with 17 significant digits; `inf`, `-inf`, `NaN` otherwise.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return format!("{:.16}", x);
    }
    let sci = format!("{:.16e}", x);
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    let decimals = (16 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Records {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Records {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Records {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(i) => i.to_string(),
                    Cell::Float(x) => format_float(*x),
                    Cell::Bool(b) => b.to_string(),
                    Cell::Text(s) => csv_text(s),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// An array of objects keyed by column name. Non-finite floats are `null`.
    pub fn to_json_value(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Cell::Int(i) => Value::from(*i),
                        Cell::Float(x) => Number::from_f64(*x).map_or(Value::Null, Value::Number),
                        Cell::Bool(b) => Value::Bool(*b),
                        Cell::Text(s) => Value::String(s.clone()),
                    };
                    obj.insert(name.clone(), v);
                }
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_text(text: &str, path: &Path) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn write_output(data: &Records, format: Format, path: &Path) -> CliResult<()> {
    write_text(&data.render(format), path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(format_float(-0.28125), "-0.28125000000000000");
        assert_eq!(format_float(0.0), "0.0000000000000000");
        assert_eq!(format_float(700.0), "700.00000000000000");
        assert_eq!(format_float(1.5e-5), "0.000015000000000000000");
        assert_eq!(format_float(1e20), "100000000000000000000");
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(format_float(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_float(f64::NAN), "NaN");
    }

    #[test]
    fn rounding_into_the_next_decade() {
        let x = 9.999_999_999_999_999_5;
        let s = format_float(x);
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }

    #[test]
    fn floats_round_trip() {
        for x in [
            0.1,
            1.0 / 3.0,
            -1234.5678e-9,
            6.02214076e23,
            f64::MIN_POSITIVE,
        ] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_and_json_share_column_names() {
        let mut r = Records::new(["n", "l", "E", "valid"]);
        r.push(vec![
            0u32.into(),
            0u32.into(),
            (-0.28125).into(),
            true.into(),
        ]);
        assert_eq!(r.to_csv(), "n,l,E,valid\n0,0,-0.28125000000000000,true\n");
        let v = r.to_json_value();
        assert_eq!(v[0]["E"], -0.28125);
        assert_eq!(v[0]["valid"], true);
        let keys: Vec<&String> = v[0].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["n", "l", "E", "valid"]);
    }

    #[test]
    fn non_finite_json_is_null() {
        let mut r = Records::new(["Z"]);
        r.push(vec![f64::INFINITY.into()]);
        assert_eq!(r.to_json_value()[0]["Z"], Value::Null);
    }

    #[test]
    fn text_is_quoted_when_needed() {
        assert_eq!(csv_text("a,b"), "\"a,b\"");
        assert_eq!(csv_text("plain"), "plain");
    }
}
