use rand::Rng;

use super::config::SimulationConfig;
use super::SimulationError;
use crate::dataset::IntervalDataset;
use crate::interval::Interval;

/// Redraws allowed for a single observation before the config is declared
/// infeasible.
pub const REJECTION_BUDGET: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedSample {
    pub data: IntervalDataset,
    /// Observations discarded because a generated radius was negative.
    pub rejections: usize,
}

/// Draws one dataset from the model
///
/// ```text
/// Yᶜ = b + Σ a_j X_jᶜ + λ,    Yʳ = Σ |a_j| X_jʳ + η
/// ```
///
/// An observation whose `X_jʳ` or `Yʳ` comes out negative is discarded and
/// redrawn in full.
pub fn generate_sample<R: Rng + ?Sized>(
    config: &SimulationConfig,
    rng: &mut R,
) -> Result<GeneratedSample, SimulationError> {
    let model = &config.model;
    let (n, p) = (config.n, model.p());
    let mut predictors: Vec<Vec<Interval>> = vec![Vec::with_capacity(n); p];
    let mut response = Vec::with_capacity(n);
    let mut rejections = 0;
    let mut xs = vec![(0.0, 0.0); p];

    for _ in 0..n {
        let mut attempts = 0;
        let y = loop {
            if attempts == REJECTION_BUDGET {
                return Err(SimulationError::RejectionBudgetExceeded {
                    model: model.name.clone(),
                    budget: REJECTION_BUDGET,
                });
            }
            attempts += 1;
            let mut yc = model.b;
            let mut yr = 0.0;
            let mut valid = true;
            for (j, x) in xs.iter_mut().enumerate() {
                let law = config.law_for(j);
                let xc = law.center.sample(rng);
                let xr = law.radius.sample(rng);
                valid &= xr >= 0.0;
                yc += model.a[j] * xc;
                yr += model.a[j].abs() * xr;
                *x = (xc, xr);
            }
            yc += model.sigma_lambda * config.error_law.standard(rng);
            yr += model.mu + model.sigma_eta * config.error_law.standard(rng);
            if valid && yr >= 0.0 {
                break (yc, yr);
            }
            rejections += 1;
        };
        for (col, &(c, r)) in predictors.iter_mut().zip(&xs) {
            col.push(Interval::from_center_radius(c, r).map_err(|e| SimulationError::Internal(e.to_string()))?);
        }
        response.push(Interval::from_center_radius(y.0, y.1).map_err(|e| SimulationError::Internal(e.to_string()))?);
    }
    let data = IntervalDataset::new(predictors, response).map_err(|e| SimulationError::Internal(e.to_string()))?;
    Ok(GeneratedSample { data, rejections })
}
