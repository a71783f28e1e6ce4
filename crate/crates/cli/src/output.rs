//! Tables and their JSON / CSV renderings.

use serde_json::{json, Map, Value};
use slice_harmonic::rational::{format_rational, format_sig12};
use slice_harmonic::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Exact(Rational),
    Float(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    pub fn int(v: usize) -> Self {
        Cell::Int(v as i128)
    }

    pub fn exact(v: &Rational) -> Self {
        Cell::Exact(v.clone())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Exact(v) => format_rational(v),
            Cell::Float(v) => format_sig12(*v),
            Cell::Text(s) => quote_csv(s),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Exact(v) => Value::String(format_rational(v)),
            Cell::Float(v) => float_json(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Null => Value::Null,
        }
    }
}

/// A float rounded to twelve significant digits; `null` if not finite.
pub fn float_json(x: f64) -> Value {
    format_sig12(x)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

fn quote_csv(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The complete result of one subcommand. Built in full before anything is
/// written, so a failure never leaves a partial table behind.
#[derive(Debug, Clone)]
pub struct Report {
    command: &'static str,
    params: Map<String, Value>,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
    extra: Map<String, Value>,
    csv: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, columns: &[&str]) -> Self {
        Self {
            command,
            params: Map::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            extra: Map::new(),
            csv: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn add_column(&mut self, name: &str) {
        self.columns.push(name.to_string());
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Top-level JSON field alongside the table.
    pub fn extra(&mut self, key: &str, value: Value) {
        self.extra.insert(key.to_string(), value);
    }

    /// Replaces the default CSV rendering.
    pub fn csv_body(&mut self, body: String) {
        self.csv = Some(body);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .cloned()
                            .zip(row.iter().map(Cell::json))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut out = Map::new();
                out.insert("schema_version".into(), json!(1));
                out.insert("command".into(), json!(self.command));
                out.insert("params".into(), Value::Object(self.params.clone()));
                out.insert("columns".into(), json!(self.columns));
                out.insert("rows".into(), Value::Array(rows));
                for (k, v) in &self.extra {
                    out.insert(k.clone(), v.clone());
                }
                let mut text = serde_json::to_string_pretty(&Value::Object(out))
                    .expect("JSON values always serialize");
                text.push('\n');
                text
            }
            Format::Csv => {
                if let Some(body) = &self.csv {
                    return body.clone();
                }
                let mut text = self.columns.join(",");
                text.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    text.push_str(&cells.join(","));
                    text.push('\n');
                }
                text
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use slice_harmonic::rational::rat;

    #[test]
    fn renders_both_formats() {
        let mut r = Report::new("demo", &["n", "value", "approx", "note"]);
        r.param("p", "1/2");
        r.push(vec![
            Cell::int(4),
            Cell::exact(&rat(2, 6)),
            Cell::Float(1.0 / 3.0),
            Cell::Text("a,b".into()),
        ]);
        assert_eq!(
            r.render(Format::Csv),
            "n,value,approx,note\n4,1/3,0.333333333333,\"a,b\"\n"
        );
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["rows"][0]["value"], "1/3");
        assert_eq!(v["rows"][0]["approx"], 0.333333333333);
    }

    #[test]
    fn non_finite_floats_become_null() {
        assert_eq!(float_json(f64::NAN), Value::Null);
        assert_eq!(float_json(f64::INFINITY), Value::Null);
    }
}
