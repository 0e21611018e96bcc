//! Goodness of fit in the interval space: sums of squares, R², residuals and
//! the Markov-type bound on the probability of a negative predicted radius.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::IntervalDataset;
use crate::estimation::{EstimationError, FitResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagnosticsError {
    #[error("{expected} observations but {got} fitted values")]
    LengthMismatch { expected: usize, got: usize },
    #[error("need at least 2 observations, got {0}")]
    TooFewRows(usize),
    #[error("total sum of squares is zero")]
    ZeroTotalVariation,
    #[error(transparent)]
    Estimation(#[from] EstimationError),
}

/// A fitted value as raw `(centre, radius)`; the radius may be negative.
pub type FittedPair = (f64, f64);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumsOfSquares {
    /// `Σ [(Yᶜ_i − Ȳᶜ)² + (Yʳ_i − Ȳʳ)²]`
    pub sst: f64,
    /// `Σ [(Ŷᶜ_i − Ȳᶜ)² + (Ŷʳ_i − Ȳʳ)²]`
    pub sse: f64,
    /// `Σ δ²(Y_i, Ŷ_i)`
    pub ssr: f64,
}

/// SST, SSE and SSR of `fitted` against the observed responses.
pub fn sums_of_squares(data: &IntervalDataset, fitted: &[FittedPair]) -> Result<SumsOfSquares, DiagnosticsError> {
    let n = data.n();
    if fitted.len() != n {
        return Err(DiagnosticsError::LengthMismatch {
            expected: n,
            got: fitted.len(),
        });
    }
    if n < 2 {
        return Err(DiagnosticsError::TooFewRows(n));
    }
    let y = data.response();
    let mc = y.iter().map(|v| v.center()).sum::<f64>() / n as f64;
    let mr = y.iter().map(|v| v.radius()).sum::<f64>() / n as f64;
    let mut out = SumsOfSquares {
        sst: 0.0,
        sse: 0.0,
        ssr: 0.0,
    };
    for (yi, &(fc, fr)) in y.iter().zip(fitted) {
        out.sst += (yi.center() - mc).powi(2) + (yi.radius() - mr).powi(2);
        out.sse += (fc - mc).powi(2) + (fr - mr).powi(2);
        out.ssr += (yi.center() - fc).powi(2) + (yi.radius() - fr).powi(2);
    }
    Ok(out)
}

/// `R² = 1 − SSR / SST`.
pub fn r_squared(ss: &SumsOfSquares) -> Result<f64, DiagnosticsError> {
    if !(ss.sst > 0.0) {
        return Err(DiagnosticsError::ZeroTotalVariation);
    }
    Ok(1.0 - ss.ssr / ss.sst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativeRadiusBound {
    /// `σ̂²_η / (Yʳ_i)²`, or `None` where `Yʳ_i = 0`.
    pub per_obs: Vec<Option<f64>>,
    /// Mean over the bounded entries; `None` when every entry is unbounded.
    pub mean_bound: Option<f64>,
    pub unbounded: usize,
}

/// Upper bound on `P(Ŷʳ_i < 0)` per observation.
pub fn negative_radius_bound(fit: &FitResult, data: &IntervalDataset) -> NegativeRadiusBound {
    let per_obs: Vec<Option<f64>> = data
        .response()
        .iter()
        .map(|y| {
            let r = y.radius();
            (r > 0.0).then(|| fit.sigma2_eta / (r * r))
        })
        .collect();
    let bounded: Vec<f64> = per_obs.iter().flatten().copied().collect();
    let mean_bound = (!bounded.is_empty()).then(|| bounded.iter().sum::<f64>() / bounded.len() as f64);
    NegativeRadiusBound {
        unbounded: per_obs.len() - bounded.len(),
        per_obs,
        mean_bound,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `Yᶜ_i − Ŷᶜ_i`
    pub center: Vec<f64>,
    /// `Yʳ_i − Ŷʳ_i`, against the raw predicted radius.
    pub radius: Vec<f64>,
    pub mean_center: f64,
    pub mean_radius: f64,
}

pub fn residuals(data: &IntervalDataset, fit: &FitResult) -> Result<Residuals, DiagnosticsError> {
    let fitted = raw_fitted(data, fit)?;
    Ok(residuals_from(data, &fitted))
}

fn residuals_from(data: &IntervalDataset, fitted: &[FittedPair]) -> Residuals {
    let (center, radius): (Vec<f64>, Vec<f64>) = data
        .response()
        .iter()
        .zip(fitted)
        .map(|(y, &(c, r))| (y.center() - c, y.radius() - r))
        .unzip();
    let n = center.len() as f64;
    Residuals {
        mean_center: center.iter().sum::<f64>() / n,
        mean_radius: radius.iter().sum::<f64>() / n,
        center,
        radius,
    }
}

/// Raw fitted `(centre, radius)` for every observation.
pub fn raw_fitted(data: &IntervalDataset, fit: &FitResult) -> Result<Vec<FittedPair>, DiagnosticsError> {
    if data.p() != fit.p() {
        return Err(EstimationError::DimensionMismatch {
            expected: fit.p(),
            got: data.p(),
        }
        .into());
    }
    Ok((0..data.n()).map(|i| fit.predict_raw(&data.row(i))).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub sst: f64,
    pub sse: f64,
    pub ssr: f64,
    /// `1 − SSR/SST`; `None` when SST is zero.
    pub r2: Option<f64>,
    pub residuals: Residuals,
    pub sigma2_lambda: f64,
    pub sigma2_eta: f64,
    pub neg_radius_bound: NegativeRadiusBound,
    /// Observations whose raw predicted radius is negative.
    pub neg_radius_count: usize,
}

/// All diagnostics of a least-squares fit on its data.
pub fn diagnose(data: &IntervalDataset, fit: &FitResult) -> Result<Diagnostics, DiagnosticsError> {
    let fitted = raw_fitted(data, fit)?;
    let ss = sums_of_squares(data, &fitted)?;
    Ok(Diagnostics {
        sst: ss.sst,
        sse: ss.sse,
        ssr: ss.ssr,
        r2: r_squared(&ss).ok(),
        neg_radius_count: fitted.iter().filter(|f| f.1 < 0.0).count(),
        residuals: residuals_from(data, &fitted),
        sigma2_lambda: fit.sigma2_lambda,
        sigma2_eta: fit.sigma2_eta,
        neg_radius_bound: negative_radius_bound(fit, data),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::{fit, Branch};
    use crate::interval::Interval;

    fn iv(c: f64, r: f64) -> Interval {
        Interval::from_center_radius(c, r).unwrap()
    }

    fn sample() -> IntervalDataset {
        let xs = [(0.0, 1.0), (1.0, 0.5), (2.0, 2.0), (3.5, 1.0), (5.0, 1.5), (6.0, 0.7)];
        let ys = [
            (5.3, 2.1),
            (6.8, 1.2),
            (9.5, 4.4),
            (11.7, 2.1),
            (15.4, 3.3),
            (16.6, 1.1),
        ];
        IntervalDataset::new(
            vec![xs.iter().map(|&(c, r)| iv(c, r)).collect()],
            ys.iter().map(|&(c, r)| iv(c, r)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn perfect_and_null_fits() {
        let d = sample();
        let observed: Vec<FittedPair> = d.response().iter().map(|y| (y.center(), y.radius())).collect();
        let ss = sums_of_squares(&d, &observed).unwrap();
        assert_eq!(ss.ssr, 0.0);
        assert_eq!(ss.sse, ss.sst);
        assert_eq!(r_squared(&ss).unwrap(), 1.0);

        let mc = d.response_centers().iter().sum::<f64>() / 6.0;
        let mr = d.response_radii().iter().sum::<f64>() / 6.0;
        let ss = sums_of_squares(&d, &[(mc, mr); 6]).unwrap();
        assert!(ss.sse < 1e-24);
        assert!((ss.ssr - ss.sst).abs() < 1e-12);
        assert!(r_squared(&ss).unwrap().abs() < 1e-12);
        assert!(sums_of_squares(&d, &observed[1..]).is_err());
    }

    #[test]
    fn zero_total_variation() {
        let ss = SumsOfSquares {
            sst: 0.0,
            sse: 0.0,
            ssr: 0.0,
        };
        assert_eq!(r_squared(&ss), Err(DiagnosticsError::ZeroTotalVariation));
    }

    #[test]
    fn lse_fit_decomposes() {
        let d = sample();
        let f = fit(&d).unwrap().into_fitted().unwrap();
        let diag = diagnose(&d, &f).unwrap();
        assert!((diag.sst - diag.sse - diag.ssr).abs() <= 1e-9 * diag.sst);
        assert!(diag.residuals.mean_center.abs() < 1e-10);
        assert!(diag.residuals.mean_radius.abs() < 1e-10);
        assert!((diag.r2.unwrap() - diag.sse / diag.sst).abs() < 1e-9);
    }

    #[test]
    fn bound_examples() {
        let d = IntervalDataset::new(
            vec![vec![iv(0.0, 1.0), iv(1.0, 1.0), iv(2.0, 1.0)]],
            vec![iv(0.0, 2.0), iv(1.0, 0.0), iv(2.0, 2.0)],
        )
        .unwrap();
        let mut f = FitResult {
            a: vec![1.0],
            b: 0.0,
            mu: 0.0,
            sigma2_lambda: 0.0,
            sigma2_eta: 1.0,
            objective: 0.0,
            branch: Branch::PlusHalfSpace,
            tied_optima: 1,
        };
        let b = negative_radius_bound(&f, &d);
        assert_eq!(b.per_obs, vec![Some(0.25), None, Some(0.25)]);
        assert_eq!(b.mean_bound, Some(0.25));
        assert_eq!(b.unbounded, 1);
        f.sigma2_eta = 0.0;
        assert_eq!(negative_radius_bound(&f, &d).mean_bound, Some(0.0));
    }

    #[test]
    fn intercept_absorbs_centre_shift() {
        let d = sample();
        let f = fit(&d).unwrap().into_fitted().unwrap();
        let shifted = IntervalDataset::new(
            d.predictors().to_vec(),
            d.response().iter().map(|y| iv(y.center() + 1.0, y.radius())).collect(),
        )
        .unwrap();
        let before = residuals(&shifted, &f).unwrap();
        assert!((before.mean_center - 1.0).abs() < 1e-10);
        let refit = fit(&shifted).unwrap().into_fitted().unwrap();
        assert!(residuals(&shifted, &refit).unwrap().mean_center.abs() < 1e-10);
    }
}
