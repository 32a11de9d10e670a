//! CSV ingestion of income samples.
//!
//! Rows are numbered as in a spreadsheet: the header is row 1, the first
//! data row is row 2.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use thiserror::Error;

use super::EmpiricalSample;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot open {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("column '{0}' not found in header")]
    MissingColumn(String),
    #[error("no data rows")]
    Empty,
    #[error("empty income cell at row {row}")]
    EmptyCell { row: usize },
    #[error("cannot parse '{cell}' in column '{column}' at row {row}")]
    Unparsable {
        row: usize,
        column: String,
        cell: String,
    },
    #[error("negative income at row {row}")]
    NegativeIncome { row: usize },
    #[error("non-positive weight at row {row}")]
    NonPositiveWeight { row: usize },
    #[error("all incomes are zero")]
    AllZero,
}

fn column_index(headers: &csv::StringRecord, name: &str) -> Result<usize, IngestError> {
    headers
        .iter()
        .position(|h| h.trim() == name)
        .ok_or_else(|| IngestError::MissingColumn(name.to_string()))
}

fn parse_cell(cell: &str, column: &str, row: usize) -> Result<f64, IngestError> {
    let unparsable = || IngestError::Unparsable {
        row,
        column: column.to_string(),
        cell: cell.to_string(),
    };
    let v: f64 = cell.trim().parse().map_err(|_| unparsable())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(unparsable())
    }
}

/// Reads `column` (and optionally `weight_column`) from CSV text with a
/// header row.
pub fn from_csv_column<R: Read>(
    reader: R,
    column: &str,
    weight_column: Option<&str>,
) -> Result<EmpiricalSample, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let value_idx = column_index(&headers, column)?;
    let weight_idx = weight_column
        .map(|w| column_index(&headers, w))
        .transpose()?;

    let mut values = Vec::new();
    let mut weights = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 2;
        let record = record?;
        let cell = record.get(value_idx).unwrap_or("").trim();
        if cell.is_empty() {
            return Err(IngestError::EmptyCell { row });
        }
        let v = parse_cell(cell, column, row)?;
        if v < 0.0 {
            return Err(IngestError::NegativeIncome { row });
        }
        values.push(v);
        if let (Some(idx), Some(name)) = (weight_idx, weight_column) {
            let w = parse_cell(record.get(idx).unwrap_or(""), name, row)?;
            if w <= 0.0 {
                return Err(IngestError::NonPositiveWeight { row });
            }
            weights.push(w);
        }
    }

    if values.is_empty() {
        return Err(IngestError::Empty);
    }
    if values.iter().all(|v| *v == 0.0) {
        return Err(IngestError::AllZero);
    }
    let sample = if weight_idx.is_some() {
        EmpiricalSample::with_weights(values, weights)
    } else {
        EmpiricalSample::new(values)
    };
    // Every invariant was checked row by row above.
    Ok(sample.expect("validated sample"))
}

pub fn from_csv_path(
    path: &Path,
    column: &str,
    weight_column: Option<&str>,
) -> Result<EmpiricalSample, IngestError> {
    let file = File::open(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_csv_column(file, column, weight_column)
}
