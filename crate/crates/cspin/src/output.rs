use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Column-major header with row-major numeric cells; `None` is a missing value.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

/// Twelve significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.11e}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub metadata: Value,
    pub table: Table,
    pub summary: Option<Value>,
}

impl Dataset {
    pub fn write_csv(&self, w: &mut impl Write) -> CliResult<()> {
        writeln!(w, "# {}", serde_json::to_string(&self.metadata)?)?;
        writeln!(w, "{}", self.table.columns.join(","))?;
        for row in &self.table.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| c.map(format_float).unwrap_or_default())
                .collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "metadata": self.metadata,
            "columns": self.table.columns,
            "rows": self.table.rows,
        });
        if let Some(s) = &self.summary {
            v["summary"] = s.clone();
        }
        v
    }

    pub fn write(&self, format: Format, w: &mut impl Write) -> CliResult<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *w, &self.to_json())?;
                writeln!(w)?;
                Ok(())
            }
        }
    }
}
