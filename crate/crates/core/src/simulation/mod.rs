//! Monte-Carlo engine for the interval linear model.

pub mod config;
pub mod exec;
pub mod generate;
pub mod rng;
pub mod study;

use thiserror::Error;

use crate::estimation::EstimationError;

pub use config::{preset, ConfigError, ErrorLaw, Law, ModelSpec, PredictorLaw, SimulationConfig, PRESET_NAMES};
pub use exec::{map_indexed, thread_cap, Execution, THREADS_ENV};
pub use generate::{generate_sample, GeneratedSample, REJECTION_BUDGET};
pub use rng::{cell_seed, replication_rng};
pub use study::{
    estimate_wrong_branch_probability, run_comparison_cell, run_comparison_study, run_negative_radius_study,
    run_parameter_cell, run_parameter_study, BiasCheck, ComparisonCell, McStat, Method, MethodAmse,
    NegativeRadiusStudy, ParameterCell, ParameterStat, StudyReport, DEFAULT_SPLIT,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimulationError {
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("model {model}: more than {budget} redraws needed for one observation")]
    RejectionBudgetExceeded { model: String, budget: usize },
    #[error(transparent)]
    Estimation(#[from] EstimationError),
    #[error("internal error: {0}")]
    Internal(String),
}
