//! Report assembly and the three output formats.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

/// One command's output: an optional headline, ordered summary fields and an
/// optional table. Values are JSON so the JSON format keeps numbers and
/// booleans typed.
pub struct Report {
    pub command: &'static str,
    pub headline: Option<String>,
    pub summary: Vec<(&'static str, Value)>,
    pub table: Option<Table>,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, headline: None, summary: Vec::new(), table: None, exit_code: 0 }
    }

    pub fn field(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.summary.push((key, value.into()));
        self
    }

    pub fn emit(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Human => self.human(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json())?;
                writeln!(out)
            }
            Format::Csv => self.csv(out),
        }
    }

    fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.into()));
        for (k, v) in &self.summary {
            m.insert((*k).into(), v.clone());
        }
        if let Some(t) = &self.table {
            let rows = t
                .rows
                .iter()
                .map(|r| Value::Object(t.headers.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect()))
                .collect();
            m.insert("rows".into(), Value::Array(rows));
        }
        m.insert("exit_code".into(), Value::from(self.exit_code));
        Value::Object(m)
    }

    fn human(&self, out: &mut impl Write) -> std::io::Result<()> {
        if let Some(t) = &self.table {
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(plain).collect()).collect();
            let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
            for r in &cells {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |items: Vec<&str>| -> String {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(t.headers.clone()))?;
            for r in &cells {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
            }
        }
        if !self.summary.is_empty() {
            let parts: Vec<String> = self.summary.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
            writeln!(out, "{}", parts.join(", "))?;
        }
        if let Some(h) = &self.headline {
            writeln!(out, "{h}")?;
        }
        Ok(())
    }

    fn csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        match &self.table {
            Some(t) => {
                w.write_record(&t.headers)?;
                for r in &t.rows {
                    w.write_record(r.iter().map(plain))?;
                }
            }
            None => {
                w.write_record(["key", "value"])?;
                for (k, v) in &self.summary {
                    w.write_record([k.to_string(), plain(v)])?;
                }
            }
        }
        w.flush()
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(a) => format!("[{}]", a.iter().map(plain).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}
