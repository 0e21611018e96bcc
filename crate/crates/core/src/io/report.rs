//! JSON fit reports and CSV/JSON study reports.

use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use super::number::format_g17;
use super::IoError;
use crate::dataset::IntervalDataset;
use crate::diagnostics::{diagnose, Diagnostics};
use crate::estimation::{Branch, FitOutcome, FitResult, NoSolutionReason};
use crate::simulation::{McStat, StudyReport};

pub const FIT_SCHEMA_VERSION: &str = "iregress.fit/1";
pub const STUDY_SCHEMA_VERSION: &str = "iregress.study/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitStatus {
    Ok,
    NoSolution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variables {
    pub predictors: Vec<String>,
    pub response: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    pub a: Vec<f64>,
    pub b: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub sst: f64,
    pub sse: f64,
    pub ssr: f64,
    pub r2: Option<f64>,
    pub sigma2_lambda: f64,
    pub sigma2_eta: f64,
    pub neg_radius_bound_mean: Option<f64>,
    pub neg_radius_count: usize,
}

impl From<&Diagnostics> for DiagnosticsReport {
    fn from(d: &Diagnostics) -> Self {
        Self {
            sst: d.sst,
            sse: d.sse,
            ssr: d.ssr,
            r2: d.r2,
            sigma2_lambda: d.sigma2_lambda,
            sigma2_eta: d.sigma2_eta,
            neg_radius_bound_mean: d.neg_radius_bound.mean_bound,
            neg_radius_count: d.neg_radius_count,
        }
    }
}

/// Machine-readable result of a fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub schema_version: String,
    pub status: FitStatus,
    pub reason: Option<NoSolutionReason>,
    pub variables: Variables,
    pub n: usize,
    pub coefficients: Option<Coefficients>,
    pub branch: Option<Branch>,
    pub objective: Option<f64>,
    pub tied_optima: Option<usize>,
    pub diagnostics: Option<DiagnosticsReport>,
    pub warnings: Vec<String>,
}

fn variables_of(data: &IntervalDataset) -> Variables {
    match data.names() {
        Some(names) => Variables {
            predictors: names[..names.len() - 1].to_vec(),
            response: names[names.len() - 1].clone(),
        },
        None => Variables {
            predictors: (1..=data.p()).map(|j| format!("x{j}")).collect(),
            response: "y".into(),
        },
    }
}

impl FitReport {
    /// Builds the report of `outcome` on the data it was fitted to,
    /// including diagnostics and warnings.
    pub fn build(data: &IntervalDataset, outcome: &FitOutcome) -> Self {
        let variables = variables_of(data);
        match outcome {
            FitOutcome::NoSolution(reason) => Self {
                schema_version: FIT_SCHEMA_VERSION.into(),
                status: FitStatus::NoSolution,
                reason: Some(reason.clone()),
                variables,
                n: data.n(),
                coefficients: None,
                branch: None,
                objective: None,
                tied_optima: None,
                diagnostics: None,
                warnings: vec![format!("no least-squares solution: {reason}")],
            },
            FitOutcome::Fitted(fit) => {
                let mut warnings = Vec::new();
                let diagnostics = diagnose(data, fit).ok();
                if let Some(d) = &diagnostics {
                    if d.neg_radius_count > 0 {
                        warnings.push(format!(
                            "{} fitted radii are negative and would be rounded up to 0",
                            d.neg_radius_count
                        ));
                    }
                    if d.neg_radius_bound.unbounded > 0 {
                        warnings.push(format!(
                            "{} observations have zero response radius; the negative-radius bound skips them",
                            d.neg_radius_bound.unbounded
                        ));
                    }
                    if d.r2.is_none() {
                        warnings.push("total sum of squares is zero; R² is undefined".into());
                    }
                }
                if fit.tied_optima > 1 {
                    warnings.push(format!(
                        "{} admissible solutions share the minimal objective; reporting the first",
                        fit.tied_optima
                    ));
                }
                Self {
                    schema_version: FIT_SCHEMA_VERSION.into(),
                    status: FitStatus::Ok,
                    reason: None,
                    variables,
                    n: data.n(),
                    coefficients: Some(Coefficients {
                        a: fit.a.clone(),
                        b: fit.b,
                        mu: fit.mu,
                    }),
                    branch: Some(fit.branch.clone()),
                    objective: Some(fit.objective),
                    tied_optima: Some(fit.tied_optima),
                    diagnostics: diagnostics.as_ref().map(DiagnosticsReport::from),
                    warnings,
                }
            }
        }
    }

    /// The fitted model, as far as prediction needs it.
    pub fn fit_result(&self) -> Option<FitResult> {
        let c = self.coefficients.as_ref()?;
        let d = self.diagnostics.as_ref();
        Some(FitResult {
            a: c.a.clone(),
            b: c.b,
            mu: c.mu,
            sigma2_lambda: d.map_or(f64::NAN, |d| d.sigma2_lambda),
            sigma2_eta: d.map_or(f64::NAN, |d| d.sigma2_eta),
            objective: self.objective.unwrap_or(f64::NAN),
            branch: self.branch.clone().unwrap_or(Branch::SignPattern(vec![1; c.a.len()])),
            tied_optima: self.tied_optima.unwrap_or(1),
        })
    }

    pub fn to_json(&self) -> Result<String, IoError> {
        to_json_g17(self)
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let report: FitReport = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
        if report.schema_version != FIT_SCHEMA_VERSION {
            return Err(IoError::Schema(format!(
                "unsupported schema {:?} (expected {FIT_SCHEMA_VERSION})",
                report.schema_version
            )));
        }
        if let Some(c) = &report.coefficients {
            if c.a.len() != report.variables.predictors.len() {
                return Err(IoError::Schema(format!(
                    "{} slopes for {} predictors",
                    c.a.len(),
                    report.variables.predictors.len()
                )));
            }
        }
        Ok(report)
    }
}

/// Rewrites every non-integer number with 17 significant digits.
fn normalize_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => match n.as_f64() {
            Some(x) if x.is_finite() => format_g17(x)
                .parse::<Number>()
                .map(Value::Number)
                .unwrap_or(Value::Number(n)),
            _ => Value::Null,
        },
        Value::Array(items) => Value::Array(items.into_iter().map(normalize_numbers).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, normalize_numbers(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with 17-significant-digit numbers; non-finite values become
/// `null`.
pub fn to_json_g17<T: Serialize>(value: &T) -> Result<String, IoError> {
    let v = serde_json::to_value(value).map_err(|e| IoError::Json(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&normalize_numbers(v)).map_err(|e| IoError::Json(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct StudyDocument<'a> {
    schema_version: &'static str,
    #[serde(flatten)]
    report: &'a StudyReport,
}

pub fn study_to_json(report: &StudyReport) -> Result<String, IoError> {
    to_json_g17(&StudyDocument {
        schema_version: STUDY_SCHEMA_VERSION,
        report,
    })
}

fn push_stat(record: &mut Vec<String>, s: Option<&McStat>) {
    match s {
        Some(s) => {
            record.push(format_g17(s.mean));
            record.push(format_g17(s.se));
        }
        None => {
            record.push(String::new());
            record.push(String::new());
        }
    }
}

/// Parameter study as CSV, one row per (model, n) cell. Slope columns cover
/// the widest model; cells of narrower models leave them empty.
pub fn write_parameter_csv<W: Write>(output: W, report: &StudyReport) -> Result<(), IoError> {
    let max_p = report
        .parameter
        .iter()
        .map(|c| c.parameters.len().saturating_sub(2))
        .max()
        .unwrap_or(0);
    let mut names: Vec<String> = (1..=max_p).map(|j| format!("a{j}")).collect();
    names.push("b".into());
    names.push("mu".into());

    let mut header: Vec<String> = [
        "model",
        "n",
        "seed",
        "replications",
        "fitted",
        "no_solution",
        "rejections",
        "wrong_branch",
        "wrong_branch_se",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for name in &names {
        for stat in ["mae", "mae_se", "me", "me_se"] {
            header.push(format!("{name}_{stat}"));
        }
    }
    for col in [
        "predicted_me_a",
        "predicted_me_a_se",
        "me_abs_a",
        "me_abs_a_se",
        "predicted_me_abs_a",
        "predicted_me_abs_a_se",
        "me_a_minus_predicted",
        "me_a_minus_predicted_se",
    ] {
        header.push(col.into());
    }

    let mut w = csv::Writer::from_writer(output);
    w.write_record(&header)?;
    for cell in &report.parameter {
        let mut r = vec![
            cell.model.clone(),
            cell.n.to_string(),
            cell.seed.to_string(),
            cell.replications.to_string(),
            cell.fitted.to_string(),
            cell.no_solution.to_string(),
            cell.rejections.to_string(),
        ];
        push_stat(&mut r, Some(&cell.wrong_branch));
        for name in &names {
            match cell.parameter(name) {
                Some(p) => {
                    push_stat(&mut r, Some(&p.mae));
                    push_stat(&mut r, Some(&p.me));
                }
                None => {
                    push_stat(&mut r, None);
                    push_stat(&mut r, None);
                }
            }
        }
        let b = cell.bias_check.as_ref();
        push_stat(&mut r, b.map(|b| &b.predicted_me_a));
        push_stat(&mut r, b.map(|b| &b.me_abs_a));
        push_stat(&mut r, b.map(|b| &b.predicted_me_abs_a));
        push_stat(&mut r, b.map(|b| &b.difference));
        w.write_record(&r)?;
    }
    w.flush().map_err(|e| IoError::Csv(e.to_string()))?;
    Ok(())
}

/// Comparison study as CSV, one row per (model, n) cell with AMSE columns for
/// every method.
pub fn write_comparison_csv<W: Write>(output: W, report: &StudyReport) -> Result<(), IoError> {
    let mut methods: Vec<&str> = Vec::new();
    for cell in &report.comparison {
        for m in &cell.methods {
            if !methods.contains(&m.method.label()) {
                methods.push(m.method.label());
            }
        }
    }
    let mut header: Vec<String> = [
        "model",
        "n",
        "seed",
        "split",
        "replications",
        "used",
        "degenerate_validation",
        "no_solution",
        "baseline_failures",
        "rejections",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for m in &methods {
        for part in ["center", "radius", "average"] {
            header.push(format!("{m}_amse_{part}"));
            header.push(format!("{m}_amse_{part}_se"));
        }
    }
    let mut w = csv::Writer::from_writer(output);
    w.write_record(&header)?;
    for cell in &report.comparison {
        let mut r = vec![
            cell.model.clone(),
            cell.n.to_string(),
            cell.seed.to_string(),
            format_g17(cell.split),
            cell.replications.to_string(),
            cell.used.to_string(),
            cell.degenerate_validation.to_string(),
            cell.no_solution.to_string(),
            cell.baseline_failures.to_string(),
            cell.rejections.to_string(),
        ];
        for m in &methods {
            let found = cell.methods.iter().find(|x| x.method.label() == *m);
            push_stat(&mut r, found.map(|x| &x.center));
            push_stat(&mut r, found.map(|x| &x.radius));
            push_stat(&mut r, found.map(|x| &x.average));
        }
        w.write_record(&r)?;
    }
    w.flush().map_err(|e| IoError::Csv(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::fit;
    use crate::interval::Interval;

    fn noiseless() -> IntervalDataset {
        let xs = [(0.0, 1.0), (1.0, 0.5), (3.0, 2.0), (4.0, 0.25)];
        IntervalDataset::new(
            vec![xs
                .iter()
                .map(|&(c, r)| Interval::from_center_radius(c, r).unwrap())
                .collect()],
            xs.iter()
                .map(|&(c, r)| Interval::from_center_radius(2.0 * c + 5.0, 2.0 * r).unwrap())
                .collect(),
        )
        .unwrap()
        .with_names(vec!["x".into(), "y".into()])
        .unwrap()
    }

    #[test]
    fn fit_report_round_trips() {
        let d = noiseless();
        let report = FitReport::build(&d, &fit(&d).unwrap());
        assert_eq!(report.status, FitStatus::Ok);
        assert!(report.warnings.is_empty(), "{:?}", report.warnings);
        let text = report.to_json().unwrap();
        assert!(text.contains("\"schema_version\": \"iregress.fit/1\""));
        assert!(text.contains("\"branch\": \"plus_half_space\""));
        let back = FitReport::from_json(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn numbers_have_seventeen_digits() {
        let text = to_json_g17(&vec![0.1, 2.0, f64::NAN]).unwrap();
        let compact: String = text.split_whitespace().collect();
        assert_eq!(compact, "[0.10000000000000001,2,null]");
    }

    #[test]
    fn schema_version_is_checked() {
        let d = noiseless();
        let text = FitReport::build(&d, &fit(&d).unwrap())
            .to_json()
            .unwrap()
            .replace("iregress.fit/1", "iregress.fit/0");
        assert!(matches!(FitReport::from_json(&text), Err(IoError::Schema(_))));
    }
}
