//! Matrix file formats.
//!
//! - CSV: one row per line, comma-separated decimal literals. Blank lines are
//!   skipped.
//! - JSON: an array of arrays of numbers.
//!
//! The dimension is inferred from the number of rows; ragged or non-square
//! input is rejected.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::json::fmt_g17;
use crate::matrix::SquareMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MatrixFormat {
    Csv,
    Json,
}

impl MatrixFormat {
    /// JSON if the first non-blank character opens an array, CSV otherwise.
    pub fn detect(text: &str) -> Self {
        match text.trim_start().chars().next() {
            Some('[') => MatrixFormat::Json,
            _ => MatrixFormat::Csv,
        }
    }
}

impl FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(MatrixFormat::Csv),
            "json" => Ok(MatrixFormat::Json),
            other => Err(Error::Parse(format!("unknown matrix format {other:?}"))),
        }
    }
}

pub fn parse_matrix(text: &str, format: Option<MatrixFormat>) -> Result<SquareMatrix> {
    let rows = match format.unwrap_or_else(|| MatrixFormat::detect(text)) {
        MatrixFormat::Csv => parse_csv(text)?,
        MatrixFormat::Json => serde_json::from_str::<Vec<Vec<f64>>>(text)
            .map_err(|e| Error::Parse(format!("invalid JSON matrix: {e}")))?,
    };
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    SquareMatrix::from_rows(&rows)
}

fn parse_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .map(|field| {
                field.parse::<f64>().map_err(|_| {
                    Error::Parse(format!("line {}: not a number: {field:?}", line + 1))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Reads a matrix from `path`, or from standard input when `path` is `-`.
pub fn read_matrix(path: &Path, format: Option<MatrixFormat>) -> Result<SquareMatrix> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    parse_matrix(&text, format)
}

/// Writes `m` with 17 significant digits per entry.
pub fn format_matrix(m: &SquareMatrix, format: MatrixFormat) -> String {
    let mut out = String::new();
    match format {
        MatrixFormat::Csv => {
            for row in m.rows() {
                let cells: Vec<String> = row.iter().map(|&v| fmt_g17(v)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        MatrixFormat::Json => {
            out.push('[');
            for (i, row) in m.rows().enumerate() {
                if i > 0 {
                    out.push_str(",\n ");
                }
                let cells: Vec<String> = row.iter().map(|&v| fmt_g17(v)).collect();
                let _ = write!(out, "[{}]", cells.join(", "));
            }
            out.push_str("]\n");
        }
    }
    out
}
