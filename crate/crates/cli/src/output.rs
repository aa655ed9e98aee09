//! Tabular output as CSV or JSON. Both encodings carry the same rounded
//! numbers, so either can be parsed back to identical values.

use serde_json::{Map, Value};

use crate::OutputArg;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Number with its printed form.
    Num(String),
    Text(String),
    Blank,
}

impl Cell {
    /// Scientific notation, six significant digits.
    pub fn sci(v: f64) -> Cell {
        // Drop the sign of zero.
        let v = if v == 0.0 { 0.0 } else { v };
        Cell::Num(format!("{v:.5e}"))
    }

    pub fn opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Blank, Cell::sci)
    }

    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    fn csv(&self) -> &str {
        match self {
            Cell::Num(s) | Cell::Text(s) => s,
            Cell::Blank => "",
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(s) => s
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Blank => Value::Null,
        }
    }
}

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table {
            headers: headers.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn render(&self, format: OutputArg) -> String {
        match format {
            OutputArg::Csv => {
                let mut out = self.headers.join(",");
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<&str> = row.iter().map(Cell::csv).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            OutputArg::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .headers
                            .iter()
                            .zip(row)
                            .map(|(h, c)| (h.to_string(), c.json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("JSON values serialise");
                s.push('\n');
                s
            }
        }
    }
}

/// Tables of correction factors: mantissa form below 0.1 (three
/// significant digits), four significant digits above.
pub fn table_style(v: f64) -> Cell {
    if v.abs() < 0.1 && v != 0.0 {
        Cell::Num(format!("{v:.2e}"))
    } else {
        let digits = if v.abs() >= 1.0 { 3 } else { 4 };
        Cell::Num(format!("{v:.digits$}"))
    }
}
