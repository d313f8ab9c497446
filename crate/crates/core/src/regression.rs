//! The regression case matrix: named (potential, region, β) cases with
//! expected constants, shared by the test-suite and the CLI runner.

use crate::model::{PotentialSpec, RegionSpec};

/// One named regression case.
#[derive(Clone, Debug)]
pub struct Case {
    pub name: &'static str,
    pub potential: PotentialSpec,
    pub region: RegionSpec,
    pub beta: f64,
    /// Expected constant and absolute tolerance.
    pub expect: Option<(f64, f64)>,
}

/// The built-in case matrix.
pub fn cases() -> Vec<Case> {
    Vec::new()
}
