//! Linear regression for interval-valued data under the delta metric.
//!
//! Intervals are modelled as elements of the space of compact convex subsets
//! of the real line with Minkowski arithmetic. The response is linked to the
//! predictors by
//!
//! ```text
//! Y = b + Σ a_j X_j + ε,    ε = [λ − η, λ + η]
//! ```
//!
//! so that `Yᶜ = b + Σ a_j X_jᶜ + λ` and `Yʳ = Σ |a_j| X_jʳ + η`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ccrm;
pub mod dataset;
pub mod diagnostics;
pub mod estimation;
pub mod interval;
pub mod io;
pub mod linalg;
pub mod simulation;

pub use ccrm::{fit_ccrm, nnls, CcrmError, CcrmFit, NnlsError};
pub use dataset::{DatasetError, IntervalDataset};
pub use diagnostics::{diagnose, Diagnostics, DiagnosticsError};
pub use estimation::{
    fit, fit_multivariate, fit_univariate, predict, Branch, EstimationError, FitOutcome, FitResult, NoSolutionReason,
    Prediction,
};
pub use interval::{Interval, IntervalError};
