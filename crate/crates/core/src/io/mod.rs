//! File formats: interval CSV, JSON fit reports, study configs and reports,
//! plot data.

pub mod config;
pub mod data;
pub mod number;
pub mod plot;
pub mod report;

use std::path::Path;

use thiserror::Error;

use crate::dataset::DatasetError;

pub use config::{StudyFile, StudyKind, StudyPlan};
pub use data::{
    load_dataset, load_predictors, read_dataset, read_headers, save_dataset, write_dataset, ColumnSpec, Layout,
};
pub use number::format_g17;
pub use plot::{emit_plot_data, PlotFiles};
pub use report::{study_to_json, write_comparison_csv, write_parameter_csv, FitReport, FitStatus};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IoError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("CSV error: {0}")]
    Csv(String),
    #[error("row {row}, column {column}: {reason}")]
    Parse { row: usize, column: String, reason: String },
    #[error("row {row}: lower bound exceeds upper bound for {variable}")]
    BoundsInverted { row: usize, variable: String },
    #[error("missing column {0}")]
    MissingColumn(String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error("JSON error: {0}")]
    Json(String),
    #[error("schema mismatch: {0}")]
    Schema(String),
}

impl IoError {
    pub fn io(path: &Path, err: std::io::Error) -> Self {
        IoError::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}

impl From<csv::Error> for IoError {
    fn from(e: csv::Error) -> Self {
        IoError::Csv(e.to_string())
    }
}
