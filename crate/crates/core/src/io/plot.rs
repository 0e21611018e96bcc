//! Plain CSV data for rectangle plots, fitted lines and residual histograms.

use std::fs::File;
use std::path::{Path, PathBuf};

use super::number::format_g17;
use super::IoError;
use crate::dataset::IntervalDataset;
use crate::diagnostics::residuals;
use crate::estimation::FitResult;

pub const RECTANGLES_FILE: &str = "rectangles.csv";
pub const LINES_FILE: &str = "lines.csv";
pub const RESIDUALS_FILE: &str = "residuals.csv";

/// Points at which the fitted lines are sampled.
pub const LINE_SAMPLES: usize = 101;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotFiles {
    pub written: Vec<PathBuf>,
    /// Set when the line overlay was skipped.
    pub notice: Option<String>,
}

fn writer(path: &Path) -> Result<csv::Writer<File>, IoError> {
    Ok(csv::Writer::from_writer(
        File::create(path).map_err(|e| IoError::io(path, e))?,
    ))
}

/// Writes
///
/// * `rectangles.csv`: `obs,predictor,x_lo,x_hi,y_lo,y_hi`, one row per
///   observation and predictor;
/// * `lines.csv`: `x,fit,fit_plus_mu,fit_minus_mu`, the lines `âx + b̂` and
///   `âx + b̂ ± μ̂` over the predictor's extent (univariate fits only);
/// * `residuals.csv`: `obs,residual_center,residual_radius`.
pub fn emit_plot_data(data: &IntervalDataset, fit: &FitResult, out_dir: &Path) -> Result<PlotFiles, IoError> {
    std::fs::create_dir_all(out_dir).map_err(|e| IoError::io(out_dir, e))?;
    let mut written = Vec::new();
    let names: Vec<String> = match data.names() {
        Some(n) => n[..data.p()].to_vec(),
        None => (1..=data.p()).map(|j| format!("x{j}")).collect(),
    };

    let path = out_dir.join(RECTANGLES_FILE);
    let mut w = writer(&path)?;
    w.write_record(["obs", "predictor", "x_lo", "x_hi", "y_lo", "y_hi"])?;
    for i in 0..data.n() {
        let y = data.response()[i];
        for (j, name) in names.iter().enumerate() {
            let x = data.predictor(j)[i];
            w.write_record([
                (i + 1).to_string(),
                name.clone(),
                format_g17(x.lower()),
                format_g17(x.upper()),
                format_g17(y.lower()),
                format_g17(y.upper()),
            ])?;
        }
    }
    w.flush().map_err(|e| IoError::io(&path, e))?;
    written.push(path);

    let mut notice = None;
    if data.p() == 1 && fit.p() == 1 {
        let path = out_dir.join(LINES_FILE);
        let xs = data.predictor(0);
        let lo = xs.iter().map(|x| x.lower()).fold(f64::INFINITY, f64::min);
        let hi = xs.iter().map(|x| x.upper()).fold(f64::NEG_INFINITY, f64::max);
        let mut w = writer(&path)?;
        w.write_record(["x", "fit", "fit_plus_mu", "fit_minus_mu"])?;
        for k in 0..LINE_SAMPLES {
            let x = lo + (hi - lo) * k as f64 / (LINE_SAMPLES - 1) as f64;
            let y = fit.a[0] * x + fit.b;
            w.write_record([
                format_g17(x),
                format_g17(y),
                format_g17(y + fit.mu),
                format_g17(y - fit.mu),
            ])?;
        }
        w.flush().map_err(|e| IoError::io(&path, e))?;
        written.push(path);
    } else {
        notice = Some(format!(
            "{LINES_FILE} not written: line overlays need exactly one predictor (p = {})",
            data.p()
        ));
    }

    let path = out_dir.join(RESIDUALS_FILE);
    let res = residuals(data, fit).map_err(|e| IoError::Schema(e.to_string()))?;
    let mut w = writer(&path)?;
    w.write_record(["obs", "residual_center", "residual_radius"])?;
    for (i, (c, r)) in res.center.iter().zip(&res.radius).enumerate() {
        w.write_record([(i + 1).to_string(), format_g17(*c), format_g17(*r)])?;
    }
    w.flush().map_err(|e| IoError::io(&path, e))?;
    written.push(path);

    Ok(PlotFiles { written, notice })
}
