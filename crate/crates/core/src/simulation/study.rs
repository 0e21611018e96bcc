//! Monte-Carlo studies: parameter recovery, out-of-sample comparison with
//! CCRM, and the negative-radius bound check.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::config::{ConfigError, SimulationConfig};
use super::exec::{map_indexed, Execution};
use super::generate::generate_sample;
use super::rng::{cell_seed, replication_rng};
use super::SimulationError;
use crate::ccrm::{fit_ccrm, CcrmFit};
use crate::dataset::IntervalDataset;
use crate::diagnostics::negative_radius_bound;
use crate::estimation::{bias_formula, fit, sample_moments, Branch, FitOutcome, FitResult};
use crate::linalg::compensated_sum;

pub const PARAMETER_STUDY: &str = "parameter";
pub const COMPARISON_STUDY: &str = "comparison";
pub const NEGATIVE_RADIUS_STUDY: &str = "negative_radius";

/// Default training fraction of the comparison study.
pub const DEFAULT_SPLIT: f64 = 0.8;

/// Monte-Carlo mean with its standard error `sd / √m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McStat {
    pub mean: f64,
    /// `NaN` with fewer than two values.
    pub se: f64,
}

impl McStat {
    pub fn from_values(values: &[f64]) -> Self {
        let m = values.len();
        if m == 0 {
            return Self {
                mean: f64::NAN,
                se: f64::NAN,
            };
        }
        let mean = compensated_sum(values.iter().copied()) / m as f64;
        if m < 2 {
            return Self { mean, se: f64::NAN };
        }
        let ss = compensated_sum(values.iter().map(|v| (v - mean).powi(2)));
        let sd = (ss / (m - 1) as f64).sqrt();
        Self {
            mean,
            se: sd / (m as f64).sqrt(),
        }
    }

    /// `|mean| / se`, the distance from zero in standard errors.
    pub fn z(&self) -> f64 {
        self.mean / self.se
    }
}

/// MAE and ME of one parameter over the fitted replications.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterStat {
    pub name: String,
    pub truth: f64,
    pub mae: McStat,
    pub me: McStat,
}

/// Observed slope bias against the bias formula evaluated per replication.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BiasCheck {
    /// Mean of the formula `E(â − a | X)` with the replication's wrong-branch
    /// indicator in place of the probability.
    pub predicted_me_a: McStat,
    /// Same for `E(|â| − |a| | X)`.
    pub predicted_me_abs_a: McStat,
    /// Observed ME of `|â|`.
    pub me_abs_a: McStat,
    /// Paired `(â − a) − predicted`; its mean is zero when the formula holds.
    pub difference: McStat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterCell {
    pub model: String,
    pub n: usize,
    pub seed: u64,
    pub replications: usize,
    pub fitted: usize,
    pub no_solution: usize,
    /// Observations redrawn by the generator, summed over replications.
    pub rejections: u64,
    /// Fraction of fitted replications whose branch disagrees with the true
    /// slope signs.
    pub wrong_branch: McStat,
    /// `a1..ap`, `b`, `mu`.
    pub parameters: Vec<ParameterStat>,
    /// Univariate models only.
    pub bias_check: Option<BiasCheck>,
}

impl ParameterCell {
    pub fn parameter(&self, name: &str) -> Option<&ParameterStat> {
        self.parameters.iter().find(|p| p.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    LeastSquares,
    Ccrm,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::LeastSquares => "least_squares",
            Method::Ccrm => "ccrm",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodAmse {
    pub method: Method,
    pub center: McStat,
    pub radius: McStat,
    pub average: McStat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonCell {
    pub model: String,
    pub n: usize,
    pub seed: u64,
    pub split: f64,
    pub replications: usize,
    /// Replications that entered the averages.
    pub used: usize,
    pub degenerate_validation: usize,
    pub no_solution: usize,
    pub baseline_failures: usize,
    pub rejections: u64,
    pub methods: Vec<MethodAmse>,
}

impl ComparisonCell {
    pub fn method(&self, m: Method) -> Option<&MethodAmse> {
        self.methods.iter().find(|x| x.method == m)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StudyReport {
    pub parameter: Vec<ParameterCell>,
    pub comparison: Vec<ComparisonCell>,
}

fn true_signs(a: &[f64]) -> Vec<i8> {
    a.iter().map(|&v| if v < 0.0 { -1 } else { 1 }).collect()
}

fn is_wrong_branch(branch: &Branch, a: &[f64]) -> bool {
    branch.signs() != true_signs(a)
}

enum ParameterRep {
    Fitted {
        errors: Vec<f64>,
        abs_error: f64,
        wrong: bool,
        predicted: Option<(f64, f64)>,
        rejections: usize,
    },
    NoSolution {
        rejections: usize,
    },
}

fn parameter_replication(cfg: &SimulationConfig, seed: u64, rep: usize) -> Result<ParameterRep, SimulationError> {
    let mut rng = replication_rng(seed, rep as u64);
    let sample = generate_sample(cfg, &mut rng)?;
    let model = &cfg.model;
    let f = match fit(&sample.data)? {
        FitOutcome::Fitted(f) => f,
        FitOutcome::NoSolution(_) => {
            return Ok(ParameterRep::NoSolution {
                rejections: sample.rejections,
            })
        }
    };
    let mut errors: Vec<f64> = f.a.iter().zip(&model.a).map(|(e, t)| e - t).collect();
    errors.push(f.b - model.b);
    errors.push(f.mu - model.mu);
    let wrong = is_wrong_branch(&f.branch, &model.a);
    let predicted = if model.p() == 1 {
        let m = sample_moments(&sample.data)?;
        let b = bias_formula(
            model.a[0],
            m.cov_c.get(0, 0),
            m.cov_r.get(0, 0),
            if wrong { 1.0 } else { 0.0 },
        )?;
        Some((b.bias_a, b.bias_abs_a))
    } else {
        None
    };
    Ok(ParameterRep::Fitted {
        errors,
        abs_error: f.a[0].abs() - model.a[0].abs(),
        wrong,
        predicted,
        rejections: sample.rejections,
    })
}

/// Parameter-recovery study of one cell: generate, fit, record errors.
/// Replications without a solution are counted and left out of the averages.
pub fn run_parameter_cell(cfg: &SimulationConfig, exec: Execution) -> Result<ParameterCell, SimulationError> {
    cfg.validate()?;
    let model = &cfg.model;
    let seed = cell_seed(cfg.seed, PARAMETER_STUDY, &model.name, cfg.n);
    let reps = map_indexed(exec, cfg.replications, |rep| parameter_replication(cfg, seed, rep));

    let k = model.p() + 2;
    let mut errors: Vec<Vec<f64>> = vec![Vec::new(); k];
    let mut abs_errors = Vec::new();
    let mut wrong = Vec::new();
    let mut predicted_a = Vec::new();
    let mut predicted_abs = Vec::new();
    let mut difference = Vec::new();
    let (mut no_solution, mut rejections) = (0, 0u64);
    for rep in reps {
        match rep? {
            ParameterRep::NoSolution { rejections: r } => {
                no_solution += 1;
                rejections += r as u64;
            }
            ParameterRep::Fitted {
                errors: e,
                abs_error,
                wrong: w,
                predicted,
                rejections: r,
            } => {
                rejections += r as u64;
                if let Some((pa, pabs)) = predicted {
                    predicted_a.push(pa);
                    predicted_abs.push(pabs);
                    difference.push(e[0] - pa);
                }
                for (col, v) in errors.iter_mut().zip(e) {
                    col.push(v);
                }
                abs_errors.push(abs_error);
                wrong.push(if w { 1.0 } else { 0.0 });
            }
        }
    }

    let mut names: Vec<(String, f64)> = model
        .a
        .iter()
        .enumerate()
        .map(|(j, &t)| (format!("a{}", j + 1), t))
        .collect();
    names.push(("b".into(), model.b));
    names.push(("mu".into(), model.mu));
    let parameters = names
        .into_iter()
        .zip(&errors)
        .map(|((name, truth), e)| {
            let abs: Vec<f64> = e.iter().map(|v| v.abs()).collect();
            ParameterStat {
                name,
                truth,
                mae: McStat::from_values(&abs),
                me: McStat::from_values(e),
            }
        })
        .collect();
    let bias_check = (model.p() == 1).then(|| BiasCheck {
        predicted_me_a: McStat::from_values(&predicted_a),
        predicted_me_abs_a: McStat::from_values(&predicted_abs),
        me_abs_a: McStat::from_values(&abs_errors),
        difference: McStat::from_values(&difference),
    });

    Ok(ParameterCell {
        model: model.name.clone(),
        n: cfg.n,
        seed,
        replications: cfg.replications,
        fitted: wrong.len(),
        no_solution,
        rejections,
        wrong_branch: McStat::from_values(&wrong),
        parameters,
        bias_check,
    })
}

pub fn run_parameter_study(configs: &[SimulationConfig], exec: Execution) -> Result<StudyReport, SimulationError> {
    let parameter = configs
        .iter()
        .map(|c| run_parameter_cell(c, exec))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StudyReport {
        parameter,
        comparison: Vec::new(),
    })
}

/// Estimated probability that the selected branch disagrees with the signs
/// of the true slopes, with its standard error.
pub fn estimate_wrong_branch_probability(cfg: &SimulationConfig, exec: Execution) -> Result<McStat, SimulationError> {
    Ok(run_parameter_cell(cfg, exec)?.wrong_branch)
}

enum FittedModel {
    LeastSquares(FitResult),
    Ccrm(CcrmFit),
}

impl FittedModel {
    /// Predicted centre and radius, with a negative radius rounded up to 0.
    fn predict(&self, x: &[crate::interval::Interval]) -> (f64, f64) {
        let (c, r) = match self {
            FittedModel::LeastSquares(f) => f.predict_raw(x),
            FittedModel::Ccrm(f) => f.predict_raw(x),
        };
        (c, r.max(0.0))
    }
}

/// Random training/validation split; the first `round(split · n)` shuffled
/// indices train.
pub fn split_indices<R: rand::Rng + ?Sized>(n: usize, split: f64, rng: &mut R) -> (Vec<usize>, Vec<usize>) {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let n_train = ((n as f64) * split).round() as usize;
    let validation = idx.split_off(n_train.min(n));
    (idx, validation)
}

fn validate_split(n: usize, split: f64) -> Result<(), ConfigError> {
    if !(split > 0.0 && split < 1.0) {
        return Err(ConfigError::new("split", format!("must lie in (0, 1), got {split}")));
    }
    let n_train = ((n as f64) * split).round() as usize;
    if n.saturating_sub(n_train) < 2 || n_train < 2 {
        return Err(ConfigError::new(
            "split",
            format!("n = {n} with split {split} leaves fewer than 2 observations on one side"),
        ));
    }
    Ok(())
}

/// `(center, radius)` AMSE of `model` on `validation`, or `None` when the
/// validation centres or radii have no variability.
fn amse(model: &FittedModel, validation: &IntervalDataset) -> Option<(f64, f64)> {
    let n = validation.n() as f64;
    let y = validation.response();
    let mc = y.iter().map(|v| v.center()).sum::<f64>() / n;
    let mr = y.iter().map(|v| v.radius()).sum::<f64>() / n;
    let (mut num_c, mut num_r, mut den_c, mut den_r) = (0.0, 0.0, 0.0, 0.0);
    for (i, yi) in y.iter().enumerate() {
        let (c, r) = model.predict(&validation.row(i));
        num_c += (yi.center() - c).powi(2);
        num_r += (yi.radius() - r).powi(2);
        den_c += (yi.center() - mc).powi(2);
        den_r += (yi.radius() - mr).powi(2);
    }
    (den_c > 0.0 && den_r > 0.0).then(|| (num_c / den_c, num_r / den_r))
}

enum ComparisonRep {
    Used { amse: Vec<(f64, f64)>, rejections: usize },
    Degenerate { rejections: usize },
    NoSolution { rejections: usize },
    BaselineFailure { rejections: usize },
}

fn comparison_replication(
    cfg: &SimulationConfig,
    seed: u64,
    rep: usize,
    split: f64,
    methods: &[Method],
) -> Result<ComparisonRep, SimulationError> {
    let mut rng = replication_rng(seed, rep as u64);
    let sample = generate_sample(cfg, &mut rng)?;
    let rejections = sample.rejections;
    let (train_idx, val_idx) = split_indices(cfg.n, split, &mut rng);
    let train = sample
        .data
        .subset(&train_idx)
        .map_err(|e| SimulationError::Internal(e.to_string()))?;
    let validation = sample
        .data
        .subset(&val_idx)
        .map_err(|e| SimulationError::Internal(e.to_string()))?;

    let mut fitted = Vec::with_capacity(methods.len());
    for m in methods {
        let model = match m {
            Method::LeastSquares => match fit(&train)? {
                FitOutcome::Fitted(f) => FittedModel::LeastSquares(f),
                FitOutcome::NoSolution(_) => return Ok(ComparisonRep::NoSolution { rejections }),
            },
            Method::Ccrm => match fit_ccrm(&train) {
                Ok(f) => FittedModel::Ccrm(f),
                Err(_) => return Ok(ComparisonRep::BaselineFailure { rejections }),
            },
        };
        fitted.push(model);
    }
    let mut amses = Vec::with_capacity(methods.len());
    for model in &fitted {
        match amse(model, &validation) {
            Some(v) => amses.push(v),
            None => return Ok(ComparisonRep::Degenerate { rejections }),
        }
    }
    Ok(ComparisonRep::Used {
        amse: amses,
        rejections,
    })
}

/// Out-of-sample comparison of one cell. Each replication is split into
/// training and validation parts; every method is fitted on the training part
/// and scored by AMSE on the validation part. A replication is dropped for all
/// methods when any of them fails or the validation part is degenerate.
pub fn run_comparison_cell(
    cfg: &SimulationConfig,
    split: f64,
    methods: &[Method],
    exec: Execution,
) -> Result<ComparisonCell, SimulationError> {
    cfg.validate()?;
    validate_split(cfg.n, split)?;
    if methods.is_empty() {
        return Err(ConfigError::new("methods", "at least one method is required").into());
    }
    let seed = cell_seed(cfg.seed, COMPARISON_STUDY, &cfg.model.name, cfg.n);
    let reps = map_indexed(exec, cfg.replications, |rep| {
        comparison_replication(cfg, seed, rep, split, methods)
    });

    let mut per_method: Vec<[Vec<f64>; 3]> = vec![Default::default(); methods.len()];
    let (mut degenerate, mut no_solution, mut failures, mut rejections, mut used) = (0, 0, 0, 0u64, 0);
    for rep in reps {
        match rep? {
            ComparisonRep::Used { amse, rejections: r } => {
                used += 1;
                rejections += r as u64;
                for (acc, (c, rad)) in per_method.iter_mut().zip(amse) {
                    acc[0].push(c);
                    acc[1].push(rad);
                    acc[2].push(0.5 * (c + rad));
                }
            }
            ComparisonRep::Degenerate { rejections: r } => {
                degenerate += 1;
                rejections += r as u64;
            }
            ComparisonRep::NoSolution { rejections: r } => {
                no_solution += 1;
                rejections += r as u64;
            }
            ComparisonRep::BaselineFailure { rejections: r } => {
                failures += 1;
                rejections += r as u64;
            }
        }
    }
    let methods = methods
        .iter()
        .zip(&per_method)
        .map(|(&method, acc)| MethodAmse {
            method,
            center: McStat::from_values(&acc[0]),
            radius: McStat::from_values(&acc[1]),
            average: McStat::from_values(&acc[2]),
        })
        .collect();
    Ok(ComparisonCell {
        model: cfg.model.name.clone(),
        n: cfg.n,
        seed,
        split,
        replications: cfg.replications,
        used,
        degenerate_validation: degenerate,
        no_solution,
        baseline_failures: failures,
        rejections,
        methods,
    })
}

pub fn run_comparison_study(
    configs: &[SimulationConfig],
    split: f64,
    methods: &[Method],
    exec: Execution,
) -> Result<StudyReport, SimulationError> {
    let comparison = configs
        .iter()
        .map(|c| run_comparison_cell(c, split, methods, exec))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StudyReport {
        parameter: Vec::new(),
        comparison,
    })
}

/// One replication of the negative-radius check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NegativeRadiusRep {
    /// Share of observations with a negative raw fitted radius.
    pub frequency: f64,
    /// Mean of the per-observation bounds `σ̂²_η / (Yʳ_i)²`.
    pub mean_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativeRadiusStudy {
    pub model: String,
    pub n: usize,
    pub replications: Vec<NegativeRadiusRep>,
    pub no_solution: usize,
    /// Share of replications with `frequency <= mean_bound`.
    pub dominated_fraction: f64,
}

/// Compares, per replication, the in-sample frequency of negative raw fitted
/// radii with the mean probability bound.
pub fn run_negative_radius_study(
    cfg: &SimulationConfig,
    exec: Execution,
) -> Result<NegativeRadiusStudy, SimulationError> {
    cfg.validate()?;
    let seed = cell_seed(cfg.seed, NEGATIVE_RADIUS_STUDY, &cfg.model.name, cfg.n);
    let reps = map_indexed(
        exec,
        cfg.replications,
        |rep| -> Result<Option<NegativeRadiusRep>, SimulationError> {
            let mut rng = replication_rng(seed, rep as u64);
            let sample = generate_sample(cfg, &mut rng)?;
            let Some(f) = fit(&sample.data)?.into_fitted() else {
                return Ok(None);
            };
            let data = &sample.data;
            let negative = (0..data.n()).filter(|&i| f.predict_raw(&data.row(i)).1 < 0.0).count();
            let bound = negative_radius_bound(&f, data);
            Ok(Some(NegativeRadiusRep {
                frequency: negative as f64 / data.n() as f64,
                mean_bound: bound.mean_bound.unwrap_or(f64::INFINITY),
            }))
        },
    );
    let mut out = Vec::with_capacity(cfg.replications);
    let mut no_solution = 0;
    for r in reps {
        match r? {
            Some(v) => out.push(v),
            None => no_solution += 1,
        }
    }
    let dominated = out.iter().filter(|r| r.frequency <= r.mean_bound).count();
    Ok(NegativeRadiusStudy {
        model: cfg.model.name.clone(),
        n: cfg.n,
        dominated_fraction: if out.is_empty() {
            f64::NAN
        } else {
            dominated as f64 / out.len() as f64
        },
        replications: out,
        no_solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulation::config::{preset, ModelSpec};

    #[test]
    fn mc_stat_matches_hand_values() {
        let s = McStat::from_values(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.se - (5.0f64 / 3.0).sqrt() / 2.0).abs() < 1e-15);
        assert!(McStat::from_values(&[1.0]).se.is_nan());
    }

    #[test]
    fn parameter_cell_shape_and_invariants() {
        let cfg = SimulationConfig::new(preset("model1").unwrap(), 20, 3, 50);
        let cell = run_parameter_cell(&cfg, Execution::Parallel).unwrap();
        assert_eq!(cell.fitted + cell.no_solution, 50);
        let names: Vec<&str> = cell.parameters.iter().map(|p| p.name.as_str()).collect();
        assert_eq!(names, ["a1", "b", "mu"]);
        for p in &cell.parameters {
            assert!(p.mae.mean >= p.me.mean.abs());
        }
        assert!(cell.bias_check.is_some());
        assert_eq!(cell, run_parameter_cell(&cfg, Execution::Sequential).unwrap());
    }

    #[test]
    fn zero_slope_has_no_slope_bias() {
        let model = ModelSpec {
            name: "flat".into(),
            a: vec![0.0],
            b: 5.0,
            mu: 0.5,
            sigma_lambda: 2.0,
            sigma_eta: 0.3,
        };
        let cell = run_parameter_cell(&SimulationConfig::new(model, 50, 11, 400), Execution::Parallel).unwrap();
        let me = cell.parameter("a1").unwrap().me;
        assert!(me.mean.abs() <= 3.0 * me.se, "{me:?}");
    }

    #[test]
    fn identical_arms_give_identical_cells() {
        let cfg = SimulationConfig::new(preset("model4").unwrap(), 50, 5, 40);
        let cell = run_comparison_cell(
            &cfg,
            0.8,
            &[Method::LeastSquares, Method::LeastSquares],
            Execution::Parallel,
        )
        .unwrap();
        assert_eq!(cell.methods[0].center, cell.methods[1].center);
        assert_eq!(cell.methods[0].radius, cell.methods[1].radius);
        assert_eq!(cell.methods[0].average, cell.methods[1].average);
        assert!(cell.methods[0].average.mean >= 0.0);
    }

    #[test]
    fn split_is_validated() {
        let cfg = SimulationConfig::new(preset("model1").unwrap(), 10, 5, 2);
        assert!(matches!(
            run_comparison_cell(&cfg, 0.9, &[Method::Ccrm], Execution::Sequential),
            Err(SimulationError::Config(_))
        ));
        assert!(run_comparison_cell(&cfg, 1.0, &[Method::Ccrm], Execution::Sequential).is_err());
    }

    #[test]
    fn split_partitions_indices() {
        let (t, v) = split_indices(100, 0.8, &mut replication_rng(1, 1));
        assert_eq!((t.len(), v.len()), (80, 20));
        let mut all: Vec<usize> = t.iter().chain(&v).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..100).collect::<Vec<_>>());
    }
}
