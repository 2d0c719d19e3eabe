//! Point files and exact-pmf documents.
//!
//! Points come either as CSV (one point per row, one numeric column per
//! coordinate, an optional single header row) or as a JSON array of
//! coordinate arrays. Pmfs are written as
//! `{"n": 4, "pmf": {"1": "2/3", "2": "1/3"}}` with probabilities kept as
//! exact fraction strings.

use std::collections::BTreeMap;
use std::path::Path;

use nnstat_core::{ExactPmf, PointSample, Rational};
use serde::{Deserialize, Serialize};

use crate::format::rational_string;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    /// Row and column are 1-based positions in the input.
    #[error("row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Sample(#[from] nnstat_core::Error),
}

/// Raw rows of coordinates, before any sample validation.
pub fn parse_point_rows(text: &str) -> Result<Vec<Vec<f64>>, InputError> {
    if text.trim_start().starts_with('[') {
        parse_json_rows(text)
    } else {
        parse_csv_rows(text)
    }
}

fn parse_json_rows(text: &str) -> Result<Vec<Vec<f64>>, InputError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| InputError::Parse {
        row: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let rows = value
        .as_array()
        .ok_or_else(|| InputError::Format("expected a JSON array of points".into()))?;
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            let coords = row.as_array().ok_or_else(|| InputError::Parse {
                row: r + 1,
                column: 1,
                message: "point is not an array of numbers".into(),
            })?;
            coords
                .iter()
                .enumerate()
                .map(|(c, x)| {
                    x.as_f64().ok_or_else(|| InputError::Parse {
                        row: r + 1,
                        column: c + 1,
                        message: format!("not a number: {x}"),
                    })
                })
                .collect()
        })
        .collect()
}

fn parse_csv_rows(text: &str) -> Result<Vec<Vec<f64>>, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;
    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| InputError::Parse {
            row: e.position().map_or(index + 1, |p| p.line() as usize),
            column: 1,
            message: e.to_string(),
        })?;
        let line = record.position().map_or(index + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: Vec<Result<f64, usize>> = record
            .iter()
            .enumerate()
            .map(|(c, field)| field.parse::<f64>().map_err(|_| c + 1))
            .collect();
        // the first non-empty row may be a header
        if rows.is_empty() && width.is_none() && parsed.iter().all(Result::is_err) {
            width = Some(record.len());
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(InputError::Parse {
                row: line,
                column: record.len().min(expected) + 1,
                message: format!("expected {expected} columns, found {}", record.len()),
            });
        }
        let mut point = Vec::with_capacity(expected);
        for (c, value) in parsed.into_iter().enumerate() {
            match value {
                Ok(x) => point.push(x),
                Err(column) => {
                    return Err(InputError::Parse {
                        row: line,
                        column,
                        message: format!("not a number: {:?}", &record[c]),
                    })
                }
            }
        }
        rows.push(point);
    }
    Ok(rows)
}

/// Parses and validates a point sample; the dimension is the column count.
pub fn parse_points(text: &str) -> Result<PointSample, InputError> {
    let rows = parse_point_rows(text)?;
    let dim = rows.first().map_or(1, Vec::len);
    Ok(PointSample::new(dim, &rows)?)
}

pub fn read_points(path: &Path) -> Result<PointSample, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_points(&text)
}

/// Serialized form of an [`ExactPmf`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmfDocument {
    pub n: usize,
    pub pmf: BTreeMap<usize, String>,
}

impl From<&ExactPmf> for PmfDocument {
    fn from(pmf: &ExactPmf) -> Self {
        PmfDocument {
            n: pmf.n(),
            pmf: pmf
                .probs()
                .iter()
                .map(|(&k, p)| (k, rational_string(p)))
                .collect(),
        }
    }
}

impl PmfDocument {
    pub fn to_pmf(&self) -> Result<ExactPmf, InputError> {
        let probs = self
            .pmf
            .iter()
            .map(|(&k, s)| {
                s.parse::<Rational>().map(|p| (k, p)).map_err(|e| {
                    InputError::Format(format!("bad probability {s:?} for k={k}: {e}"))
                })
            })
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        Ok(ExactPmf::from_probs(self.n, &probs)?)
    }
}

pub fn pmf_to_json(pmf: &ExactPmf) -> String {
    serde_json::to_string(&PmfDocument::from(pmf)).expect("plain data serializes")
}

pub fn pmf_from_json(text: &str) -> Result<ExactPmf, InputError> {
    let doc: PmfDocument = serde_json::from_str(text).map_err(|e| InputError::Parse {
        row: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.to_pmf()
}
