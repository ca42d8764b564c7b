use num_complex::Complex64;
use serde_json::{json, Value};

use crate::config::OutputFormat;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // the same 17 significant digits as the CSV
            Cell::Float(x) => format!("{x:.16e}").parse::<f64>().ok().and_then(serde_json::Number::from_f64).map_or(Value::Null, Value::Number),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<i64> for Cell {
    fn from(n: i64) -> Self {
        Cell::Int(n)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// Real and imaginary parts as two cells.
pub fn complex(z: Complex64) -> [Cell; 2] {
    [Cell::Float(z.re), Cell::Float(z.im)]
}

/// A table whose last column is `status`: `ok`, `pass`, `fail` or
/// `error: <message>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: String,
    pub space: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &str, space: &str, columns: &[&str]) -> Self {
        let mut columns: Vec<String> = columns.iter().map(|c| c.to_string()).collect();
        columns.push("status".into());
        Self {
            command: command.into(),
            space: space.into(),
            columns,
            rows: Vec::new(),
        }
    }

    /// Appends a row; `values` fills the data columns from the left and the
    /// rest stay empty.
    pub fn push(&mut self, values: Vec<Cell>, status: impl Into<String>) {
        let width = self.columns.len() - 1;
        debug_assert!(values.len() <= width);
        let mut row = values;
        row.resize(width, Cell::Empty);
        row.push(Cell::Text(status.into()));
        self.rows.push(row);
    }

    /// Whether every row has status `ok` or `pass`.
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| matches!(r.last(), Some(Cell::Text(s)) if s == "ok" || s == "pass"))
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
            }
            OutputFormat::Json => {
                let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
                let doc = json!({
                    "command": self.command,
                    "space": self.space,
                    "columns": self.columns,
                    "rows": rows,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_agree() {
        let mut t = Table::new("cfun", "h2", &["lambda_re", "lambda_im", "n"]);
        let [a, b] = complex(Complex64::new(0.5, -1.0 / 3.0));
        t.push(vec![a, b, Cell::Int(3)], "ok");
        t.push(vec![Cell::Float(1.0)], "error: pole");
        let csv = t.render(OutputFormat::Csv);
        assert_eq!(
            csv,
            "lambda_re,lambda_im,n,status\n5.0000000000000000e-1,-3.3333333333333331e-1,3,ok\n1.0000000000000000e0,,,error: pole\n"
        );
        let json: Value = serde_json::from_str(&t.render(OutputFormat::Json)).unwrap();
        assert_eq!(json["rows"][0][1], json!(-0.3333333333333333));
        assert_eq!(json["rows"][1][2], Value::Null);
        assert!(!t.all_ok());
    }
}
