//! Tabular output: CSV with a comment header (config fingerprint plus the
//! tag of the result being witnessed) and a JSON mirror with one flat object
//! per row.

use std::io::Write;

use crate::config::RunConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => write!(f, "{v}"),
            Cell::Text(v) => write!(f, "{v}"),
        }
    }
}

/// A result table tagged with the check it witnesses.
#[derive(Debug, Clone)]
pub struct Table {
    /// Stable tag naming the result this table witnesses.
    pub tag: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Free-form footer comments (tail bounds, normalization constants...).
    pub footers: Vec<String>,
}

impl Table {
    pub fn new(tag: &'static str, columns: Vec<&'static str>) -> Self {
        Self { tag, columns, rows: Vec::new(), footers: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, out: &mut dyn Write, config: &RunConfig) -> Result<()> {
        let io = |e: std::io::Error| Error::config(format!("write failed: {e}"));
        writeln!(out, "# check={}", self.tag).map_err(io)?;
        writeln!(out, "# config_fingerprint={:016x}", config.fingerprint()).map_err(io)?;
        writeln!(out, "{}", self.columns.join(",")).map_err(io)?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", line.join(",")).map_err(io)?;
        }
        for footer in &self.footers {
            writeln!(out, "# {footer}").map_err(io)?;
        }
        Ok(())
    }

    /// JSON mirror: rows become flat objects keyed by column name, wrapped
    /// with the same provenance data the CSV carries in comments.
    pub fn write_json(&self, out: &mut dyn Write, config: &RunConfig) -> Result<()> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut obj = serde_json::Map::new();
            for (name, cell) in self.columns.iter().zip(row) {
                let v = match cell {
                    Cell::Int(v) => serde_json::json!(v),
                    Cell::Float(v) => serde_json::json!(v),
                    Cell::Text(v) => serde_json::json!(v),
                };
                obj.insert((*name).to_string(), v);
            }
            rows.push(serde_json::Value::Object(obj));
        }
        let doc = serde_json::json!({
            "check": self.tag,
            "config_fingerprint": format!("{:016x}", config.fingerprint()),
            "rows": rows,
            "footers": self.footers,
        });
        serde_json::to_writer_pretty(&mut *out, &doc)
            .map_err(|e| Error::config(format!("json write failed: {e}")))?;
        writeln!(out).map_err(|e| Error::config(format!("write failed: {e}")))?;
        Ok(())
    }

    pub fn write(&self, out: &mut dyn Write, config: &RunConfig) -> Result<()> {
        match config.format {
            crate::config::OutputFormat::Csv => self.write_csv(out, config),
            crate::config::OutputFormat::Json => self.write_json(out, config),
        }
    }
}
