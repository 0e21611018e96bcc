//! Least-squares estimation of the interval linear model
//!
//! ```text
//! Yᶜ = b + Σ a_j X_jᶜ + λ,    Yʳ = Σ |a_j| X_jʳ + η,    E η = μ
//! ```
//!
//! The least-squares criterion is the mean squared delta distance between the
//! observed responses and `E(Y | X)`. Because the radius equation involves
//! `|a_j|`, the criterion is only piecewise quadratic: within each orthant of
//! the slope vector it is an ordinary quadratic, and the estimator is the best
//! stationary point whose signs agree with the orthant it was solved in.
//!
//! * [`fit_univariate`] uses the closed-form half-space solutions and the
//!   four-way case analysis on the sign and size of the centre and radius
//!   covariances.
//! * [`fit_multivariate`] enumerates all `2^p` sign patterns, solves the
//!   stationarity system for each, and keeps the admissible one with the
//!   smallest criterion value.
//!
//! Neither fitter treats "no admissible solution" as an error: it is returned
//! as [`FitOutcome::NoSolution`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::IntervalDataset;
use crate::interval::Interval;
use crate::linalg::{lu_solve, LinalgError, Matrix};

/// Largest `p` accepted by [`fit_multivariate`] (2^16 sign patterns).
pub const MAX_SIGN_PATTERN_PREDICTORS: usize = 16;

/// Relative tolerance under which two criterion values count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Relative tolerance under which two sign-pattern solutions are the same
/// coefficient vector.
const DEDUP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimationError {
    #[error("need at least 2 observations, got {0}")]
    TooFewRows(usize),
    #[error("vectors have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected} predictors, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("predictor variance S²(Xᶜ) + S²(Xʳ) is zero")]
    DegenerateVariance,
    #[error("univariate fit requires exactly one predictor, got {0}")]
    NotUnivariate(usize),
    #[error("at least one predictor is required")]
    NoPredictors,
    #[error("{p} predictors exceed the sign-pattern budget of {max}")]
    PatternBudgetExceeded { p: usize, max: usize },
    #[error("the stationarity system is singular for every sign pattern")]
    SingularSystem,
    #[error("domain error: {0}")]
    Domain(String),
}

/// Which stationary solution the estimator selected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Univariate solution with `a >= 0`.
    PlusHalfSpace,
    /// Univariate solution with `a < 0`.
    MinusHalfSpace,
    /// Multivariate solution under the assumed signs (each `+1` or `-1`).
    SignPattern(Vec<i8>),
}

impl Branch {
    /// Assumed slope signs of the branch.
    pub fn signs(&self) -> Vec<i8> {
        match self {
            Branch::PlusHalfSpace => vec![1],
            Branch::MinusHalfSpace => vec![-1],
            Branch::SignPattern(s) => s.clone(),
        }
    }

    pub fn parse(s: &str) -> Option<Branch> {
        match s {
            "plus_half_space" => Some(Branch::PlusHalfSpace),
            "minus_half_space" => Some(Branch::MinusHalfSpace),
            _ => {
                let pat = s.strip_prefix("sign_pattern:")?;
                pat.chars()
                    .map(|c| match c {
                        '+' => Some(1),
                        '-' => Some(-1),
                        _ => None,
                    })
                    .collect::<Option<Vec<i8>>>()
                    .filter(|v| !v.is_empty())
                    .map(Branch::SignPattern)
            }
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::PlusHalfSpace => f.write_str("plus_half_space"),
            Branch::MinusHalfSpace => f.write_str("minus_half_space"),
            Branch::SignPattern(s) => {
                f.write_str("sign_pattern:")?;
                for &v in s {
                    f.write_str(if v < 0 { "-" } else { "+" })?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for Branch {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Branch {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Branch::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("unknown branch {s:?}")))
    }
}

/// A fitted least-squares model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// Slopes `a_1..a_p`.
    pub a: Vec<f64>,
    /// Centre intercept.
    pub b: f64,
    /// Radius intercept; may be negative.
    pub mu: f64,
    /// Residual variance of the centres, divisor `n - 1`.
    pub sigma2_lambda: f64,
    /// Residual variance of the radii, divisor `n - 1`.
    pub sigma2_eta: f64,
    /// Criterion value `L / n` at the stored coefficients.
    pub objective: f64,
    pub branch: Branch,
    /// Number of distinct admissible solutions whose criterion ties with the
    /// winner. `1` unless the optimum is not unique.
    pub tied_optima: usize,
}

impl FitResult {
    pub fn p(&self) -> usize {
        self.a.len()
    }

    /// Predicted centre and raw (unclamped) radius for one observation.
    pub fn predict_raw(&self, x: &[Interval]) -> (f64, f64) {
        let mut c = self.b;
        let mut r = self.mu;
        for (aj, xj) in self.a.iter().zip(x) {
            c += aj * xj.center();
            r += aj.abs() * xj.radius();
        }
        (c, r)
    }
}

/// Why no least-squares solution was returned.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoSolutionReason {
    /// Univariate case with `|S(Xᶜ,Yᶜ)| < |S(Xʳ,Yʳ)|` and `S(Xʳ,Yʳ) < 0`:
    /// neither half-space solution has a consistent sign.
    RadiusCovarianceNegative { cov_center: f64, cov_radius: f64 },
    /// No sign pattern produced a sign-consistent solution.
    NoAdmissiblePattern { patterns: usize, singular: usize },
}

impl fmt::Display for NoSolutionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoSolutionReason::RadiusCovarianceNegative { cov_center, cov_radius } => write!(
                f,
                "radius covariance {cov_radius} is negative and dominates centre covariance {cov_center}"
            ),
            NoSolutionReason::NoAdmissiblePattern { patterns, singular } => write!(
                f,
                "none of {patterns} sign patterns gave a sign-consistent solution ({singular} singular)"
            ),
        }
    }
}

/// Result of a fit: either a solution or an explicit no-solution marker.
#[derive(Debug, Clone, PartialEq)]
pub enum FitOutcome {
    Fitted(FitResult),
    NoSolution(NoSolutionReason),
}

impl FitOutcome {
    pub fn fitted(&self) -> Option<&FitResult> {
        match self {
            FitOutcome::Fitted(f) => Some(f),
            FitOutcome::NoSolution(_) => None,
        }
    }

    pub fn into_fitted(self) -> Option<FitResult> {
        match self {
            FitOutcome::Fitted(f) => Some(f),
            FitOutcome::NoSolution(_) => None,
        }
    }

    pub fn is_no_solution(&self) -> bool {
        matches!(self, FitOutcome::NoSolution(_))
    }
}

/// Means and divisor-`n` covariances of the centres and radii. Index `p`
/// (the last) is the response; `0..p` are the predictors.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMoments {
    pub mean_c: Vec<f64>,
    pub mean_r: Vec<f64>,
    pub cov_c: Matrix,
    pub cov_r: Matrix,
}

impl SampleMoments {
    pub fn p(&self) -> usize {
        self.mean_c.len() - 1
    }

    /// `S(X_jᶜ, Yᶜ)`.
    pub fn cov_c_y(&self, j: usize) -> f64 {
        self.cov_c.get(j, self.p())
    }

    /// `S(X_jʳ, Yʳ)`.
    pub fn cov_r_y(&self, j: usize) -> f64 {
        self.cov_r.get(j, self.p())
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn covariance_matrix(columns: &[Vec<f64>], means: &[f64]) -> Matrix {
    let k = columns.len();
    let n = columns[0].len() as f64;
    let centred: Vec<Vec<f64>> = columns
        .iter()
        .zip(means)
        .map(|(col, m)| col.iter().map(|v| v - m).collect())
        .collect();
    let mut out = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let s: f64 = centred[i].iter().zip(&centred[j]).map(|(x, y)| x * y).sum();
            out.set(i, j, s / n);
            out.set(j, i, s / n);
        }
    }
    out
}

/// Sample means and covariances of centres and radii (divisor `n`).
pub fn sample_moments(data: &IntervalDataset) -> Result<SampleMoments, EstimationError> {
    if data.n() < 2 {
        return Err(EstimationError::TooFewRows(data.n()));
    }
    let p = data.p();
    let mut centres: Vec<Vec<f64>> = (0..p).map(|j| data.predictor_centers(j)).collect();
    centres.push(data.response_centers());
    let mut radii: Vec<Vec<f64>> = (0..p).map(|j| data.predictor_radii(j)).collect();
    radii.push(data.response_radii());

    let mean_c: Vec<f64> = centres.iter().map(|c| mean(c)).collect();
    let mean_r: Vec<f64> = radii.iter().map(|c| mean(c)).collect();
    let cov_c = covariance_matrix(&centres, &mean_c);
    let cov_r = covariance_matrix(&radii, &mean_r);
    Ok(SampleMoments {
        mean_c,
        mean_r,
        cov_c,
        cov_r,
    })
}

/// Covariance through pairwise differences,
/// `(1/n²) Σ_{i<j} (x_i − x_j)(y_i − y_j)`.
///
/// Algebraically identical to the divisor-`n` sample covariance; kept as an
/// independent route for cross-checking [`sample_moments`].
pub fn pairwise_cov(xs: &[f64], ys: &[f64]) -> Result<f64, EstimationError> {
    if xs.len() != ys.len() {
        return Err(EstimationError::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    let n = xs.len();
    if n < 2 {
        return Err(EstimationError::TooFewRows(n));
    }
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += (xs[i] - xs[j]) * (ys[i] - ys[j]);
        }
    }
    Ok(s / (n * n) as f64)
}

/// Least-squares criterion `L / n` at `(a, b, μ)`.
pub fn objective(data: &IntervalDataset, a: &[f64], b: f64, mu: f64) -> Result<f64, EstimationError> {
    if a.len() != data.p() {
        return Err(EstimationError::DimensionMismatch {
            expected: data.p(),
            got: a.len(),
        });
    }
    Ok(objective_unchecked(data, a, b, mu))
}

fn objective_unchecked(data: &IntervalDataset, a: &[f64], b: f64, mu: f64) -> f64 {
    let n = data.n();
    let mut total = 0.0;
    for (i, y) in data.response().iter().enumerate() {
        let mut c = b - y.center();
        let mut r = mu - y.radius();
        for (j, aj) in a.iter().enumerate() {
            let x = data.predictor(j)[i];
            c += aj * x.center();
            r += aj.abs() * x.radius();
        }
        total += c * c + r * r;
    }
    total / n as f64
}

/// One candidate `(a, b, μ)` of the univariate model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpaceSolution {
    pub a: f64,
    pub b: f64,
    pub mu: f64,
}

/// Both closed-form half-space solutions together with the moments they were
/// built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpaceSolutions {
    pub plus: HalfSpaceSolution,
    pub minus: HalfSpaceSolution,
    /// `S(Xᶜ, Yᶜ)`.
    pub cov_center: f64,
    /// `S(Xʳ, Yʳ)`.
    pub cov_radius: f64,
    /// `S²(Xᶜ)`.
    pub var_center: f64,
    /// `S²(Xʳ)`.
    pub var_radius: f64,
}

/// The two stationary points of the univariate criterion, one per sign of
/// the slope.
pub fn half_space_solutions(data: &IntervalDataset) -> Result<HalfSpaceSolutions, EstimationError> {
    if data.p() != 1 {
        return Err(EstimationError::NotUnivariate(data.p()));
    }
    let m = sample_moments(data)?;
    let var_center = m.cov_c.get(0, 0);
    let var_radius = m.cov_r.get(0, 0);
    let denom = var_center + var_radius;
    if !(denom > 0.0) {
        return Err(EstimationError::DegenerateVariance);
    }
    let cov_center = m.cov_c_y(0);
    let cov_radius = m.cov_r_y(0);
    let solution = |a: f64| HalfSpaceSolution {
        a,
        b: m.mean_c[1] - a * m.mean_c[0],
        mu: m.mean_r[1] - a.abs() * m.mean_r[0],
    };
    Ok(HalfSpaceSolutions {
        plus: solution((cov_center + cov_radius) / denom),
        minus: solution((cov_center - cov_radius) / denom),
        cov_center,
        cov_radius,
        var_center,
        var_radius,
    })
}

fn residual_variances(data: &IntervalDataset, a: &[f64], b: f64, mu: f64) -> (f64, f64) {
    let mut sc = 0.0;
    let mut sr = 0.0;
    for (i, y) in data.response().iter().enumerate() {
        let mut c = b;
        let mut r = mu;
        for (j, aj) in a.iter().enumerate() {
            let x = data.predictor(j)[i];
            c += aj * x.center();
            r += aj.abs() * x.radius();
        }
        sc += (y.center() - c).powi(2);
        sr += (y.radius() - r).powi(2);
    }
    let dof = (data.n() - 1) as f64;
    (sc / dof, sr / dof)
}

fn finish(data: &IntervalDataset, a: Vec<f64>, b: f64, mu: f64, branch: Branch, tied_optima: usize) -> FitResult {
    let objective = objective_unchecked(data, &a, b, mu);
    let (sigma2_lambda, sigma2_eta) = residual_variances(data, &a, b, mu);
    FitResult {
        a,
        b,
        mu,
        sigma2_lambda,
        sigma2_eta,
        objective,
        branch,
        tied_optima,
    }
}

fn ties(value: f64, best: f64) -> bool {
    (value - best).abs() <= TIE_TOLERANCE * best.abs().max(f64::MIN_POSITIVE)
}

/// Univariate least-squares fit.
///
/// Case analysis on `S_c = S(Xᶜ,Yᶜ)` and `S_r = S(Xʳ,Yʳ)`:
///
/// * `|S_c| > |S_r|`: exactly one half-space solution is sign-consistent,
///   the plus one when `S_c > 0` and the minus one otherwise.
/// * `|S_c| <= |S_r|`, `S_r > 0`: both are consistent; the one with the
///   smaller criterion wins, ties going to the plus branch.
/// * `|S_c| < |S_r|`, `S_r < 0`: neither is consistent ([`FitOutcome::NoSolution`]).
///
/// The plus solution counts as consistent when `a⁺ >= 0`, the minus one when
/// `a⁻ < 0`.
pub fn fit_univariate(data: &IntervalDataset) -> Result<FitOutcome, EstimationError> {
    let hs = half_space_solutions(data)?;
    let (sc, sr) = (hs.cov_center, hs.cov_radius);

    let choose = |sol: HalfSpaceSolution, branch: Branch| {
        FitOutcome::Fitted(finish(data, vec![sol.a], sol.b, sol.mu, branch, 1))
    };

    if sc.abs() > sr.abs() {
        return Ok(if sc > 0.0 {
            choose(hs.plus, Branch::PlusHalfSpace)
        } else {
            choose(hs.minus, Branch::MinusHalfSpace)
        });
    }
    if sr < 0.0 && sc.abs() < sr.abs() {
        return Ok(FitOutcome::NoSolution(NoSolutionReason::RadiusCovarianceNegative {
            cov_center: sc,
            cov_radius: sr,
        }));
    }

    // |S_c| <= |S_r|: compare whichever half-space solutions are admissible.
    let plus_ok = hs.plus.a >= 0.0;
    let minus_ok = hs.minus.a < 0.0;
    match (plus_ok, minus_ok) {
        (true, true) => {
            let lp = objective_unchecked(data, &[hs.plus.a], hs.plus.b, hs.plus.mu);
            let lm = objective_unchecked(data, &[hs.minus.a], hs.minus.b, hs.minus.mu);
            if lp <= lm || ties(lm, lp) {
                let tied = if ties(lm, lp) { 2 } else { 1 };
                let mut out = finish(
                    data,
                    vec![hs.plus.a],
                    hs.plus.b,
                    hs.plus.mu,
                    Branch::PlusHalfSpace,
                    tied,
                );
                out.objective = lp;
                Ok(FitOutcome::Fitted(out))
            } else {
                Ok(choose(hs.minus, Branch::MinusHalfSpace))
            }
        }
        (true, false) => Ok(choose(hs.plus, Branch::PlusHalfSpace)),
        (false, true) => Ok(choose(hs.minus, Branch::MinusHalfSpace)),
        (false, false) => Ok(FitOutcome::NoSolution(NoSolutionReason::RadiusCovarianceNegative {
            cov_center: sc,
            cov_radius: sr,
        })),
    }
}

/// Signs for pattern index `mask`: the first predictor maps to the most
/// significant bit, and a set bit means `-1`. Increasing `mask` is therefore
/// lexicographic order over `(s_1, .., s_p)` with `+` before `-`.
fn pattern_signs(mask: usize, p: usize) -> Vec<i8> {
    (0..p)
        .map(|k| if (mask >> (p - 1 - k)) & 1 == 1 { -1 } else { 1 })
        .collect()
}

/// Solves the stationarity system for fixed slope signs `s`:
///
/// `Σ_j a_j S(X_jᶜ,X_kᶜ) + s_k Σ_j s_j a_j S(X_jʳ,X_kʳ) = S(X_kᶜ,Yᶜ) + s_k S(X_kʳ,Yʳ)`
pub fn solve_sign_pattern(moments: &SampleMoments, signs: &[i8]) -> Result<Vec<f64>, LinalgError> {
    let p = moments.p();
    let s: Vec<f64> = signs.iter().map(|&v| f64::from(v)).collect();
    let system = Matrix::from_fn(p, p, |k, j| {
        moments.cov_c.get(j, k) + s[k] * s[j] * moments.cov_r.get(j, k)
    });
    let rhs: Vec<f64> = (0..p).map(|k| moments.cov_c_y(k) + s[k] * moments.cov_r_y(k)).collect();
    lu_solve(&system, &rhs)
}

fn sign_consistent(a: &[f64], signs: &[i8]) -> bool {
    a.iter()
        .zip(signs)
        .all(|(&ak, &sk)| ak == 0.0 || (ak > 0.0) == (sk > 0))
}

/// Multivariate least-squares fit by exhaustive sign-pattern enumeration.
///
/// Every pattern `s ∈ {−1, +1}^p` is solved; a solution is admissible when
/// each `a_k` is zero or has sign `s_k`. Duplicate admissible solutions
/// (patterns that differ only where `a_k = 0`) are merged, and the one with
/// the smallest criterion wins, with ties resolved by pattern order.
pub fn fit_multivariate(data: &IntervalDataset) -> Result<FitOutcome, EstimationError> {
    let p = data.p();
    if p == 0 {
        return Err(EstimationError::NoPredictors);
    }
    if p > MAX_SIGN_PATTERN_PREDICTORS {
        return Err(EstimationError::PatternBudgetExceeded {
            p,
            max: MAX_SIGN_PATTERN_PREDICTORS,
        });
    }
    let m = sample_moments(data)?;
    let intercepts = |a: &[f64]| {
        let y = p;
        let b = m.mean_c[y] - a.iter().zip(&m.mean_c).map(|(aj, xj)| aj * xj).sum::<f64>();
        let mu = m.mean_r[y] - a.iter().zip(&m.mean_r).map(|(aj, xj)| aj.abs() * xj).sum::<f64>();
        (b, mu)
    };

    let patterns = 1usize << p;
    let mut singular = 0usize;
    // (mask, a, objective)
    let mut candidates: Vec<(usize, Vec<f64>, f64)> = Vec::new();
    for mask in 0..patterns {
        let signs = pattern_signs(mask, p);
        let a = match solve_sign_pattern(&m, &signs) {
            Ok(a) => a,
            Err(_) => {
                singular += 1;
                continue;
            }
        };
        if !sign_consistent(&a, &signs) {
            continue;
        }
        let scale = a.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
        let duplicate = candidates.iter().any(|(_, other, _)| {
            a.iter()
                .zip(other)
                .all(|(x, y)| (x - y).abs() <= DEDUP_TOLERANCE * scale)
        });
        if duplicate {
            continue;
        }
        let (b, mu) = intercepts(&a);
        let obj = objective_unchecked(data, &a, b, mu);
        candidates.push((mask, a, obj));
    }

    if candidates.is_empty() {
        if singular == patterns {
            return Err(EstimationError::SingularSystem);
        }
        return Ok(FitOutcome::NoSolution(NoSolutionReason::NoAdmissiblePattern {
            patterns,
            singular,
        }));
    }

    let best = candidates.iter().map(|c| c.2).fold(f64::INFINITY, f64::min);
    let tied: Vec<&(usize, Vec<f64>, f64)> = candidates.iter().filter(|c| ties(c.2, best)).collect();
    // candidates are in mask order, so the first tied entry is the
    // lexicographically smallest pattern
    let (mask, a, _) = tied[0].clone();
    let (b, mu) = intercepts(&a);
    Ok(FitOutcome::Fitted(finish(
        data,
        a,
        b,
        mu,
        Branch::SignPattern(pattern_signs(mask, p)),
        tied.len(),
    )))
}

/// Dispatches to [`fit_univariate`] when `p = 1` and to
/// [`fit_multivariate`] otherwise.
pub fn fit(data: &IntervalDataset) -> Result<FitOutcome, EstimationError> {
    if data.p() == 1 {
        fit_univariate(data)
    } else {
        fit_multivariate(data)
    }
}

/// A predicted interval. `radius` is clamped at zero when requested;
/// `raw_radius` is always the unclamped value `μ + Σ |a_j| x_jʳ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub center: f64,
    pub radius: f64,
    pub raw_radius: f64,
    /// The raw radius is negative.
    pub negative_radius: bool,
    /// Clamping changed the radius.
    pub clamped: bool,
}

impl Prediction {
    /// The predicted interval, with a negative radius treated as zero.
    pub fn interval(&self) -> Interval {
        Interval::from_center_radius(self.center, self.radius.max(0.0)).unwrap_or(Interval::point(self.center))
    }
}

/// Conditional expectation `E(Y | x)` under a fitted model.
pub fn predict(fit: &FitResult, x: &[Interval], clamp: bool) -> Result<Prediction, EstimationError> {
    if x.len() != fit.p() {
        return Err(EstimationError::DimensionMismatch {
            expected: fit.p(),
            got: x.len(),
        });
    }
    let (center, raw_radius) = fit.predict_raw(x);
    let negative_radius = raw_radius < 0.0;
    let clamped = clamp && negative_radius;
    Ok(Prediction {
        center,
        radius: if clamped { 0.0 } else { raw_radius },
        raw_radius,
        negative_radius,
        clamped,
    })
}

/// Predictions for every observation of a dataset.
pub fn fitted_values(fit: &FitResult, data: &IntervalDataset, clamp: bool) -> Result<Vec<Prediction>, EstimationError> {
    (0..data.n()).map(|i| predict(fit, &data.row(i), clamp)).collect()
}

/// Finite-sample bias of the univariate slope and of its absolute value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeBias {
    /// `E(â − a)`.
    pub bias_a: f64,
    /// `E(|â| − |a|)`.
    pub bias_abs_a: f64,
}

/// Conditional-on-X bias of the univariate slope:
///
/// ```text
/// E(â − a)     = −2a  S²(Xʳ) / (S²(Xᶜ)+S²(Xʳ)) · p_wrong
/// E(|â| − |a|) = −2|a| S²(Xᶜ) / (S²(Xᶜ)+S²(Xʳ)) · p_wrong
/// ```
///
/// where `p_wrong` is the probability of selecting the half-space opposite to
/// the sign of `a`.
pub fn bias_formula(a: f64, var_center: f64, var_radius: f64, p_wrong: f64) -> Result<SlopeBias, EstimationError> {
    let denom = var_center + var_radius;
    if !(denom > 0.0) || var_center < 0.0 || var_radius < 0.0 {
        return Err(EstimationError::Domain(format!(
            "variances must be non-negative with positive sum (got {var_center}, {var_radius})"
        )));
    }
    if !(0.0..=1.0).contains(&p_wrong) {
        return Err(EstimationError::Domain(format!(
            "p_wrong = {p_wrong} is not a probability"
        )));
    }
    if !a.is_finite() {
        return Err(EstimationError::Domain("slope must be finite".into()));
    }
    Ok(SlopeBias {
        bias_a: -2.0 * a * var_radius / denom * p_wrong,
        bias_abs_a: -2.0 * a.abs() * var_center / denom * p_wrong,
    })
}
