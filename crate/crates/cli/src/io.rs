//! Points and depth-result files.
//!
//! Points are CSV with header `x,y`. Depth results are CSV with header
//! `qx,qy,depth,raw_count,normalizer,kind,method,wall_time_us`, or a JSON array
//! of objects with the same keys. Floats are written in shortest round-trip form.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use skdepth::PointSet;

use crate::error::{CliError, Result};

pub const POINT_HEADER: [&str; 2] = ["x", "y"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthRow {
    pub qx: f64,
    pub qy: f64,
    pub depth: f64,
    pub raw_count: u64,
    pub normalizer: u64,
    pub kind: String,
    pub method: String,
    pub wall_time_us: u64,
}

pub const RESULT_HEADER: [&str; 8] = [
    "qx",
    "qy",
    "depth",
    "raw_count",
    "normalizer",
    "kind",
    "method",
    "wall_time_us",
];

fn file_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::File {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

fn malformed(path: &Path, row: u64, column: usize, message: impl Into<String>) -> CliError {
    CliError::Malformed {
        path: path.to_path_buf(),
        row,
        column,
        message: message.into(),
    }
}

/// Opens `path` for writing, or stdout when absent.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| file_error(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_all(path: &Path) -> Result<String> {
    let mut text = String::new();
    BufReader::new(File::open(path).map_err(|e| file_error(path, e))?)
        .read_to_string(&mut text)
        .map_err(|e| file_error(path, e))?;
    Ok(text)
}

fn check_header(path: &Path, found: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    for (column, want) in expected.iter().enumerate() {
        match found.get(column).map(str::trim) {
            Some(got) if got == *want => {}
            got => {
                return Err(malformed(
                    path,
                    1,
                    column + 1,
                    format!("expected header {:?}, found {:?}", expected.join(","), got.unwrap_or("")),
                ))
            }
        }
    }
    if found.len() != expected.len() {
        return Err(malformed(path, 1, expected.len() + 1, "unexpected extra header column"));
    }
    Ok(())
}

/// Reads a planar point file. Rows and columns in errors are 1-based, with
/// the header on row 1.
pub fn read_points(path: &Path) -> Result<PointSet> {
    let text = read_all(path)?;
    parse_points(path, &text)
}

pub fn parse_points(path: &Path, text: &str) -> Result<PointSet> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| malformed(path, 1, 1, e.to_string()))?.clone();
    check_header(path, &header, &POINT_HEADER)?;
    let mut coords = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let row = index as u64 + 2;
        let record = record.map_err(|e| malformed(path, row, 1, e.to_string()))?;
        if record.len() != 2 {
            return Err(malformed(path, row, record.len().min(2) + 1, format!("expected 2 fields, found {}", record.len())));
        }
        for (column, field) in record.iter().enumerate() {
            let value: f64 = field
                .trim()
                .parse()
                .map_err(|_| malformed(path, row, column + 1, format!("not a number: {field:?}")))?;
            if !value.is_finite() {
                return Err(malformed(path, row, column + 1, format!("non-finite value {field:?}")));
            }
            coords.push(value);
        }
    }
    Ok(PointSet::from_flat(2, coords)?)
}

pub fn write_points(out: &mut dyn Write, set: &PointSet) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(POINT_HEADER).map_err(csv_io)?;
    for p in set.iter() {
        writer.serialize((p[0], p[1])).map_err(csv_io)?;
    }
    writer.flush()?;
    Ok(())
}

fn csv_io(e: csv::Error) -> CliError {
    CliError::Io(io::Error::other(e))
}

pub fn write_rows_csv<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row).map_err(csv_io)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::Io(e.into()))?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// Reads depth results written by `depth`, in CSV or JSON.
pub fn read_results(path: &Path) -> Result<Vec<DepthRow>> {
    let text = read_all(path)?;
    parse_results(path, &text)
}

pub fn parse_results(path: &Path, text: &str) -> Result<Vec<DepthRow>> {
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(text).map_err(|e| malformed(path, e.line() as u64, e.column(), e.to_string()));
    }
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| malformed(path, 1, 1, e.to_string()))?.clone();
    check_header(path, &header, &RESULT_HEADER)?;
    let mut rows = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let row = index as u64 + 2;
        let record = record.map_err(|e| malformed(path, row, 1, e.to_string()))?;
        let parsed: DepthRow = record.deserialize(Some(&header)).map_err(|e| match e.kind() {
            csv::ErrorKind::Deserialize { err, .. } => {
                let column = err.field().map_or(1, |f| f as usize + 1);
                malformed(path, row, column, err.kind().to_string())
            }
            _ => malformed(path, row, 1, e.to_string()),
        })?;
        rows.push(parsed);
    }
    Ok(rows)
}

/// Depth values of two result files over the same queries, in order.
pub fn aligned_depths(a_path: &Path, b_path: &Path) -> Result<(Vec<f64>, Vec<f64>, Vec<DepthRow>)> {
    let a = read_results(a_path)?;
    let b = read_results(b_path)?;
    if a.len() != b.len() {
        return Err(CliError::Data(format!(
            "misaligned inputs: {} has {} rows, {} has {}",
            a_path.display(),
            a.len(),
            b_path.display(),
            b.len()
        )));
    }
    if let Some(i) = a.iter().zip(&b).position(|(x, y)| x.qx != y.qx || x.qy != y.qy) {
        return Err(CliError::Data(format!(
            "misaligned inputs: row {} is query ({}, {}) in {} but ({}, {}) in {}",
            i + 2,
            a[i].qx,
            a[i].qy,
            a_path.display(),
            b[i].qx,
            b[i].qy,
            b_path.display()
        )));
    }
    let u = a.iter().map(|r| r.depth).collect();
    let v = b.iter().map(|r| r.depth).collect();
    Ok((u, v, a))
}
