use std::fmt::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    Json,
    Md,
}

/// Rows of exact values, rendered as strings. Integer-valued columns listed in
/// `numeric` are emitted as JSON numbers when they fit in an `i64`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    numeric: Vec<bool>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        let headers: Vec<String> = headers.into_iter().map(Into::into).collect();
        let numeric = vec![false; headers.len()];
        Table {
            headers,
            rows: Vec::new(),
            numeric,
        }
    }

    /// Marks small-integer columns (`n`, `q`, dimensions) for JSON output.
    pub fn numeric(mut self, cols: &[&str]) -> Self {
        for (h, flag) in self.headers.iter().zip(self.numeric.iter_mut()) {
            *flag = cols.contains(&h.as_str());
        }
        self
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(|s| s.to_string()).collect();
        assert_eq!(row.len(), self.headers.len(), "row width");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => {
                let mut out = self.headers.join("\t");
                out.push('\n');
                for r in &self.rows {
                    out.push_str(&r.join("\t"));
                    out.push('\n');
                }
                out
            }
            Format::Md => {
                let mut out = String::new();
                writeln!(out, "| {} |", self.headers.join(" | ")).unwrap();
                writeln!(out, "|{}", "---|".repeat(self.headers.len())).unwrap();
                for r in &self.rows {
                    writeln!(out, "| {} |", r.join(" | ")).unwrap();
                }
                out
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let mut obj = Map::new();
                        for ((h, v), &num) in self.headers.iter().zip(r).zip(&self.numeric) {
                            let value = match v.parse::<i64>() {
                                Ok(x) if num => Value::from(x),
                                _ => Value::from(v.as_str()),
                            };
                            obj.insert(h.clone(), value);
                        }
                        Value::Object(obj)
                    })
                    .collect();
                serde_json::to_string_pretty(&rows).unwrap() + "\n"
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        let mut t = Table::new(["n", "total"]).numeric(&["n"]);
        t.push(["3", "-12"]);
        assert_eq!(t.render(Format::Tsv), "n\ttotal\n3\t-12\n");
        assert_eq!(t.render(Format::Md), "| n | total |\n|---|---|\n| 3 | -12 |\n");
        let v: Value = serde_json::from_str(&t.render(Format::Json)).unwrap();
        assert_eq!(v, serde_json::json!([{"n": 3, "total": "-12"}]));
    }
}
