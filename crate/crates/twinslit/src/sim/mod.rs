//! Monte Carlo of the counting experiment: a herald detector gates a
//! scanning signal detector, coincidences pile up Poisson counts point by
//! point, and a beam splitter variant measures the heralded g2.

pub mod g2;
pub mod rng;
pub mod sampler;
pub mod scan;

pub use g2::{run_g2, G2Result};
pub use sampler::{build_sampler, PositionSampler};
pub use scan::{run_scan, run_scan_model, ScanConfig, ScanRecord};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SimError {
    #[error("invalid {field}: {reason}")]
    InvalidConfig { field: &'static str, reason: String },
    #[error("degenerate density: {0}")]
    DegenerateDensity(String),
    #[error("insufficient counts: {0}")]
    InsufficientCounts(String),
}

impl SimError {
    pub(crate) fn config(field: &'static str, reason: impl Into<String>) -> Self {
        SimError::InvalidConfig {
            field,
            reason: reason.into(),
        }
    }
}
