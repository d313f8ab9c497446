//! Weighted Fekete points by projected gradient descent: a discrete energy
//! oracle for hole constants.

use crate::model::{HoleRegion, Potential};
use num_complex::Complex64;

/// Configuration for the energy minimizer.
#[derive(Clone, Debug)]
pub struct FeketeConfig {
    pub n_points: usize,
    pub max_iter: usize,
    pub step: f64,
    pub seed: u64,
    /// Keep iterates out of the hole by nearest-point projection.
    pub projection: bool,
}

impl Default for FeketeConfig {
    fn default() -> Self {
        FeketeConfig { n_points: 64, max_iter: 2000, step: 0.1, seed: 1, projection: true }
    }
}

/// Minimizer output: final configuration and the energy trace.
#[derive(Clone, Debug)]
pub struct PointCloud {
    pub points: Vec<Complex64>,
    pub energy_trace: Vec<f64>,
}

/// Errors from the minimizer.
#[derive(Debug, Clone)]
pub enum FeketeError {
    Invalid { what: String },
}

impl std::fmt::Display for FeketeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FeketeError::Invalid { what } => write!(f, "fekete: {what}"),
        }
    }
}

impl std::error::Error for FeketeError {}

/// Minimizes the discrete hole energy for `cfg.n_points` points outside the
/// hole region.
pub fn fekete_minimize(
    _pot: &Potential,
    _hole: Option<&HoleRegion>,
    _cfg: &FeketeConfig,
) -> Result<PointCloud, FeketeError> {
    Err(FeketeError::Invalid { what: "not implemented yet".into() })
}
