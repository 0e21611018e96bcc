//! Interval datasets as CSV. Every variable occupies two columns named with a
//! layout-specific suffix: `_lo`/`_hi` for bounds, `_c`/`_r` for centre and
//! radius.

use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::number::format_g17;
use super::IoError;
use crate::dataset::IntervalDataset;
use crate::interval::{Interval, IntervalError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layout {
    Bounds,
    CenterRadius,
}

impl Layout {
    pub fn suffixes(&self) -> (&'static str, &'static str) {
        match self {
            Layout::Bounds => ("_lo", "_hi"),
            Layout::CenterRadius => ("_c", "_r"),
        }
    }

    pub fn columns(&self, name: &str) -> (String, String) {
        let (a, b) = self.suffixes();
        (format!("{name}{a}"), format!("{name}{b}"))
    }

    fn make(&self, first: f64, second: f64) -> Result<Interval, IntervalError> {
        match self {
            Layout::Bounds => Interval::from_bounds(first, second),
            Layout::CenterRadius => Interval::from_center_radius(first, second),
        }
    }

    fn split(&self, v: &Interval) -> (f64, f64) {
        match self {
            Layout::Bounds => (v.lower(), v.upper()),
            Layout::CenterRadius => (v.center(), v.radius()),
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Layout::Bounds => "bounds",
            Layout::CenterRadius => "center-radius",
        })
    }
}

impl FromStr for Layout {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bounds" => Ok(Layout::Bounds),
            "center-radius" => Ok(Layout::CenterRadius),
            other => Err(format!("unknown layout {other:?} (expected bounds or center-radius)")),
        }
    }
}

/// Which columns hold which variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnSpec {
    pub layout: Layout,
    pub response_name: String,
    pub predictor_names: Vec<String>,
}

impl ColumnSpec {
    pub fn new(layout: Layout, response_name: impl Into<String>, predictor_names: Vec<String>) -> Self {
        Self {
            layout,
            response_name: response_name.into(),
            predictor_names,
        }
    }

    /// Takes every variable with both columns present in `headers`, except the
    /// response, as a predictor, in header order.
    pub fn infer(headers: &[String], layout: Layout, response_name: &str) -> Result<Self, IoError> {
        let (first, second) = layout.suffixes();
        let mut predictors = Vec::new();
        for h in headers {
            let Some(stem) = h.strip_suffix(first) else { continue };
            if stem == response_name || predictors.iter().any(|p| p == stem) {
                continue;
            }
            if headers.iter().any(|o| o == &format!("{stem}{second}")) {
                predictors.push(stem.to_string());
            }
        }
        let spec = Self::new(layout, response_name, predictors);
        spec.check_headers(headers, true)?;
        Ok(spec)
    }

    /// All variable names, predictors first.
    pub fn variables(&self) -> Vec<String> {
        let mut v = self.predictor_names.clone();
        v.push(self.response_name.clone());
        v
    }

    fn check_headers(&self, headers: &[String], with_response: bool) -> Result<(), IoError> {
        let names = if with_response {
            self.variables()
        } else {
            self.predictor_names.clone()
        };
        for name in names {
            let (a, b) = self.layout.columns(&name);
            for col in [a, b] {
                if !headers.contains(&col) {
                    return Err(IoError::MissingColumn(col));
                }
            }
        }
        Ok(())
    }
}

fn open(path: &Path) -> Result<File, IoError> {
    File::open(path).map_err(|e| IoError::io(path, e))
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input)
}

fn headers<R: Read>(rdr: &mut csv::Reader<R>) -> Result<Vec<String>, IoError> {
    Ok(rdr.headers()?.iter().map(str::to_string).collect())
}

/// Header row of a CSV file; empty for an empty file.
pub fn read_headers(path: &Path) -> Result<Vec<String>, IoError> {
    headers(&mut reader(open(path)?))
}

fn column_index(headers: &[String], name: &str) -> Result<usize, IoError> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| IoError::MissingColumn(name.to_string()))
}

struct VariableColumns {
    name: String,
    first: (usize, String),
    second: (usize, String),
}

fn resolve(headers: &[String], layout: Layout, names: &[String]) -> Result<Vec<VariableColumns>, IoError> {
    names
        .iter()
        .map(|name| {
            let (a, b) = layout.columns(name);
            Ok(VariableColumns {
                name: name.clone(),
                first: (column_index(headers, &a)?, a),
                second: (column_index(headers, &b)?, b),
            })
        })
        .collect()
}

fn parse_field(record: &csv::StringRecord, row: usize, (idx, column): &(usize, String)) -> Result<f64, IoError> {
    let raw = record.get(*idx).unwrap_or("");
    let value: f64 = raw.parse().map_err(|_| IoError::Parse {
        row,
        column: column.clone(),
        reason: format!("{raw:?} is not a number"),
    })?;
    if !value.is_finite() {
        return Err(IoError::Parse {
            row,
            column: column.clone(),
            reason: format!("{raw:?} is not finite"),
        });
    }
    Ok(value)
}

fn parse_interval(
    record: &csv::StringRecord,
    row: usize,
    layout: Layout,
    var: &VariableColumns,
) -> Result<Interval, IoError> {
    let a = parse_field(record, row, &var.first)?;
    let b = parse_field(record, row, &var.second)?;
    layout.make(a, b).map_err(|e| match e {
        IntervalError::BoundsInverted { .. } => IoError::BoundsInverted {
            row,
            variable: var.name.clone(),
        },
        IntervalError::NegativeRadius(r) => IoError::Parse {
            row,
            column: var.second.1.clone(),
            reason: format!("radius {r} is negative"),
        },
        IntervalError::NonFinite => IoError::Parse {
            row,
            column: var.first.1.clone(),
            reason: "not finite".into(),
        },
    })
}

/// Rows of interval values for `names`. Row numbers in errors count data rows
/// from 1.
fn read_rows<R: Read>(input: R, layout: Layout, names: &[String]) -> Result<Vec<Vec<Interval>>, IoError> {
    let mut rdr = reader(input);
    let headers = headers(&mut rdr)?;
    if headers.is_empty() {
        return Ok(Vec::new());
    }
    let vars = resolve(&headers, layout, names)?;
    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let row = i + 1;
        rows.push(
            vars.iter()
                .map(|v| parse_interval(&record, row, layout, v))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(rows)
}

pub fn read_dataset<R: Read>(input: R, spec: &ColumnSpec) -> Result<IntervalDataset, IoError> {
    let rows = read_rows(input, spec.layout, &spec.variables())?;
    let p = spec.predictor_names.len();
    let mut predictors = vec![Vec::with_capacity(rows.len()); p];
    let mut response = Vec::with_capacity(rows.len());
    for mut row in rows {
        response.push(row.pop().expect("response column"));
        for (col, v) in predictors.iter_mut().zip(row) {
            col.push(v);
        }
    }
    Ok(IntervalDataset::new(predictors, response)?.with_names(spec.variables())?)
}

/// Loads and validates a dataset (`n >= 2`).
pub fn load_dataset(path: &Path, spec: &ColumnSpec) -> Result<IntervalDataset, IoError> {
    read_dataset(open(path)?, spec)
}

/// Loads predictor rows only; zero rows and an entirely empty file are
/// accepted.
pub fn load_predictors(path: &Path, layout: Layout, names: &[String]) -> Result<Vec<Vec<Interval>>, IoError> {
    read_rows(open(path)?, layout, names)
}

pub fn write_dataset<W: Write>(output: W, data: &IntervalDataset, spec: &ColumnSpec) -> Result<(), IoError> {
    if spec.predictor_names.len() != data.p() {
        return Err(IoError::Schema(format!(
            "spec names {} predictors, dataset has {}",
            spec.predictor_names.len(),
            data.p()
        )));
    }
    let mut w = csv::Writer::from_writer(output);
    let mut header = Vec::new();
    for name in spec.variables() {
        let (a, b) = spec.layout.columns(&name);
        header.push(a);
        header.push(b);
    }
    w.write_record(&header)?;
    for i in 0..data.n() {
        let mut record = Vec::with_capacity(header.len());
        for v in data.row(i).iter().chain(std::iter::once(&data.response()[i])) {
            let (a, b) = spec.layout.split(v);
            record.push(format_g17(a));
            record.push(format_g17(b));
        }
        w.write_record(&record)?;
    }
    w.flush().map_err(|e| IoError::Csv(e.to_string()))?;
    Ok(())
}

pub fn save_dataset(path: &Path, data: &IntervalDataset, spec: &ColumnSpec) -> Result<(), IoError> {
    let file = File::create(path).map_err(|e| IoError::io(path, e))?;
    write_dataset(file, data, spec)
}
