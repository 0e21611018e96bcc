use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Validation failure, tagged with the dotted path of the offending field.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{field}: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// A univariate sampling law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dist", rename_all = "snake_case", deny_unknown_fields)]
pub enum Law {
    Uniform { low: f64, high: f64 },
    Normal { mean: f64, sd: f64 },
}

impl Law {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Law::Uniform { low, high } => low + (high - low) * rng.random::<f64>(),
            Law::Normal { mean, sd } => {
                let z: f64 = StandardNormal.sample(rng);
                mean + sd * z
            }
        }
    }

    pub fn validate(&self, field: &str) -> Result<(), ConfigError> {
        match *self {
            Law::Uniform { low, high } => {
                if !low.is_finite() || !high.is_finite() {
                    return Err(ConfigError::new(field, "bounds must be finite"));
                }
                if low > high {
                    return Err(ConfigError::new(field, format!("low {low} exceeds high {high}")));
                }
            }
            Law::Normal { mean, sd } => {
                if !mean.is_finite() || !sd.is_finite() || sd < 0.0 {
                    return Err(ConfigError::new(field, "mean must be finite and sd non-negative"));
                }
            }
        }
        Ok(())
    }
}

/// Laws of one predictor's centre and radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredictorLaw {
    pub center: Law,
    pub radius: Law,
}

impl Default for PredictorLaw {
    fn default() -> Self {
        Self {
            center: Law::Uniform { low: 0.0, high: 10.0 },
            radius: Law::Uniform { low: 0.5, high: 2.5 },
        }
    }
}

/// Family of the errors `λ` and `η`. Both are standardised and then scaled,
/// so `λ` has mean 0 and sd `σ_λ`, `η` has mean `μ` and sd `σ_η`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorLaw {
    #[default]
    Normal,
    Uniform,
}

impl ErrorLaw {
    /// A draw with mean 0 and variance 1.
    pub fn standard<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            ErrorLaw::Normal => StandardNormal.sample(rng),
            ErrorLaw::Uniform => 3f64.sqrt() * (2.0 * rng.random::<f64>() - 1.0),
        }
    }
}

/// True parameters of a data-generating model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub name: String,
    pub a: Vec<f64>,
    pub b: f64,
    pub mu: f64,
    pub sigma_lambda: f64,
    pub sigma_eta: f64,
}

impl ModelSpec {
    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn validate(&self, field: &str) -> Result<(), ConfigError> {
        if self.name.is_empty() {
            return Err(ConfigError::new(format!("{field}.name"), "must not be empty"));
        }
        if self.a.is_empty() {
            return Err(ConfigError::new(format!("{field}.a"), "at least one slope is required"));
        }
        if let Some(k) = self.a.iter().position(|v| !v.is_finite()) {
            return Err(ConfigError::new(format!("{field}.a[{k}]"), "must be finite"));
        }
        for (name, v) in [("b", self.b), ("mu", self.mu)] {
            if !v.is_finite() {
                return Err(ConfigError::new(format!("{field}.{name}"), "must be finite"));
            }
        }
        for (name, v) in [("sigma_lambda", self.sigma_lambda), ("sigma_eta", self.sigma_eta)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ConfigError::new(format!("{field}.{name}"), "must be positive"));
            }
        }
        Ok(())
    }
}

/// Names accepted by [`preset`].
pub const PRESET_NAMES: [&str; 6] = ["model1", "model2", "model3", "model4", "model5", "model6"];

/// The six models of the simulation study.
pub fn preset(name: &str) -> Option<ModelSpec> {
    let (a, mu, sigma_eta, sigma_lambda) = match name {
        "model1" => (vec![2.0], 0.5, 0.3, 2.0),
        "model2" => (vec![-2.0], 0.5, 0.3, 3.0),
        "model3" => (vec![2.0], -0.5, 0.3, 2.0),
        "model4" => (vec![3.0], -5.0, 0.5, 5.0),
        "model5" => (vec![-3.0], -5.0, 0.5, 5.0),
        "model6" => (vec![-3.0, 2.0], -5.0, 0.5, 5.0),
        _ => return None,
    };
    Some(ModelSpec {
        name: name.to_string(),
        a,
        b: 5.0,
        mu,
        sigma_lambda,
        sigma_eta,
    })
}

/// One simulation cell: a model, a sample size and how to draw the data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub model: ModelSpec,
    pub n: usize,
    /// One law per predictor, or a single law shared by all predictors.
    pub predictor_law: Vec<PredictorLaw>,
    pub error_law: ErrorLaw,
    pub seed: u64,
    pub replications: usize,
}

impl SimulationConfig {
    /// A config with the default predictor and error laws.
    pub fn new(model: ModelSpec, n: usize, seed: u64, replications: usize) -> Self {
        Self {
            model,
            n,
            predictor_law: vec![PredictorLaw::default()],
            error_law: ErrorLaw::default(),
            seed,
            replications,
        }
    }

    pub fn law_for(&self, j: usize) -> &PredictorLaw {
        if self.predictor_law.len() == 1 {
            &self.predictor_law[0]
        } else {
            &self.predictor_law[j]
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.model.validate("model")?;
        if self.n < 2 {
            return Err(ConfigError::new("n", "must be at least 2"));
        }
        if self.replications < 1 {
            return Err(ConfigError::new("replications", "must be at least 1"));
        }
        let laws = self.predictor_law.len();
        if laws != 1 && laws != self.model.p() {
            return Err(ConfigError::new(
                "predictor_law",
                format!("expected 1 or {} laws, got {laws}", self.model.p()),
            ));
        }
        for (k, law) in self.predictor_law.iter().enumerate() {
            law.center.validate(&format!("predictor_law[{k}].center"))?;
            law.radius.validate(&format!("predictor_law[{k}].radius"))?;
        }
        Ok(())
    }
}
