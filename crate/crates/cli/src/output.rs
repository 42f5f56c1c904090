//! Report envelope and the three output formats.

use std::io::{self, Write};

use robin_core::rigor::Enclosure;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub precision: u32,
    pub segment_size: u64,
    pub workers: usize,
    pub format: Format,
}

/// Rows shared by the CSV and table renderings.
#[derive(Debug, Clone, Default)]
pub struct Rows {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Rows {
    pub fn new(header: &[&str]) -> Self {
        Rows {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// What a command hands back to `main`.
pub struct Outcome {
    pub results: Value,
    pub rows: Rows,
    /// Lines printed under the table.
    pub summary: Vec<String>,
    pub exit: i32,
}

pub fn enclosure(e: &Enclosure) -> Value {
    let (lo, hi) = e.decimal_bounds();
    json!({ "lo": lo, "hi": hi, "bits": e.prec() })
}

pub fn render(
    out: &mut impl Write,
    command: &str,
    config: &Config,
    outcome: &Outcome,
    wall_time: f64,
) -> io::Result<()> {
    match config.format {
        Format::Json => {
            let report = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "command": command,
                "config": config,
                "results": outcome.results,
                "wall_time_s": wall_time,
            });
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&outcome.rows.header)?;
            for row in &outcome.rows.rows {
                w.write_record(row)?;
            }
            w.flush()
        }
        Format::Table => {
            let rows = &outcome.rows;
            let mut widths: Vec<usize> = rows.header.iter().map(|h| h.len()).collect();
            for row in &rows.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: &[String]| -> String {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            if !rows.header.is_empty() {
                writeln!(out, "{}", line(&rows.header))?;
                for row in &rows.rows {
                    writeln!(out, "{}", line(row))?;
                }
            }
            for s in &outcome.summary {
                writeln!(out, "{s}")?;
            }
            Ok(())
        }
    }
}
