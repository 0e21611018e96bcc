//! Declarative study configuration (TOML).
//!
//! ```toml
//! study = "comparison"        # or "parameter" (default)
//! seed = 42
//! replications = 1000         # default 1000
//! n = [20, 50, 100]
//! presets = ["model1", "model4"]
//! split = 0.8                 # training fraction, comparison only
//! methods = ["least_squares", "ccrm"]
//! error_law = "normal"        # or "uniform"
//!
//! [[models]]                  # explicit models, in addition to presets
//! name = "steep"
//! a = [4.0]
//! b = 1.0
//! mu = 0.5
//! sigma_lambda = 1.0
//! sigma_eta = 0.2
//!
//! [[predictor_law]]           # one entry shared by all predictors, or one per predictor
//! center = { dist = "uniform", low = 0.0, high = 10.0 }
//! radius = { dist = "uniform", low = 0.5, high = 2.5 }
//! ```

use serde::{Deserialize, Serialize};

use crate::simulation::study::DEFAULT_SPLIT;
use crate::simulation::{preset, ConfigError, ErrorLaw, Method, ModelSpec, PredictorLaw, SimulationConfig};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StudyKind {
    #[default]
    Parameter,
    Comparison,
}

fn default_replications() -> usize {
    1000
}

fn default_split() -> f64 {
    DEFAULT_SPLIT
}

fn default_methods() -> Vec<Method> {
    vec![Method::LeastSquares, Method::Ccrm]
}

fn default_laws() -> Vec<PredictorLaw> {
    vec![PredictorLaw::default()]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyFile {
    #[serde(default)]
    pub study: StudyKind,
    pub seed: u64,
    #[serde(default = "default_replications")]
    pub replications: usize,
    pub n: Vec<usize>,
    #[serde(default)]
    pub presets: Vec<String>,
    #[serde(default)]
    pub models: Vec<ModelSpec>,
    #[serde(default = "default_split")]
    pub split: f64,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default)]
    pub error_law: ErrorLaw,
    #[serde(default = "default_laws")]
    pub predictor_law: Vec<PredictorLaw>,
}

/// A validated, fully expanded study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyPlan {
    pub kind: StudyKind,
    /// One config per (model, n), models in the order given, presets first.
    pub configs: Vec<SimulationConfig>,
    pub split: f64,
    pub methods: Vec<Method>,
}

impl StudyFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| {
            let message = e.message().to_string();
            let field = e
                .span()
                .and_then(|s| text.get(..s.start))
                .map(|before| format!("line {}", before.matches('\n').count() + 1))
                .unwrap_or_else(|| "document".into());
            ConfigError::new(field, message)
        })
    }

    pub fn plan(&self) -> Result<StudyPlan, ConfigError> {
        if self.n.is_empty() {
            return Err(ConfigError::new("n", "at least one sample size is required"));
        }
        if let Some(k) = self.n.iter().position(|&n| n < 2) {
            return Err(ConfigError::new(format!("n[{k}]"), "must be at least 2"));
        }
        if self.replications < 1 {
            return Err(ConfigError::new("replications", "must be at least 1"));
        }
        let mut models = Vec::new();
        for (k, name) in self.presets.iter().enumerate() {
            models.push(
                preset(name)
                    .ok_or_else(|| ConfigError::new(format!("presets[{k}]"), format!("unknown preset {name:?}")))?,
            );
        }
        for (k, m) in self.models.iter().enumerate() {
            m.validate(&format!("models[{k}]"))?;
            models.push(m.clone());
        }
        if models.is_empty() {
            return Err(ConfigError::new("presets", "no presets or models given"));
        }
        if self.kind_is_comparison() {
            if !(self.split > 0.0 && self.split < 1.0) {
                return Err(ConfigError::new("split", "must lie in (0, 1)"));
            }
            if self.methods.is_empty() {
                return Err(ConfigError::new("methods", "at least one method is required"));
            }
        }
        let mut configs = Vec::new();
        for (k, model) in models.iter().enumerate() {
            for &n in &self.n {
                let cfg = SimulationConfig {
                    model: model.clone(),
                    n,
                    predictor_law: self.predictor_law.clone(),
                    error_law: self.error_law,
                    seed: self.seed,
                    replications: self.replications,
                };
                cfg.validate().map_err(|e| {
                    if e.field.starts_with("model") {
                        ConfigError::new(format!("models[{k}]{}", &e.field["model".len()..]), e.message)
                    } else {
                        e
                    }
                })?;
                configs.push(cfg);
            }
        }
        Ok(StudyPlan {
            kind: self.study,
            configs,
            split: self.split,
            methods: self.methods.clone(),
        })
    }

    fn kind_is_comparison(&self) -> bool {
        self.study == StudyKind::Comparison
    }
}
