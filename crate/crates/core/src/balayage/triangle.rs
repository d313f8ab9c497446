//! Swept measure for an equilateral-triangle hole in the elliptic Ginibre
//! droplet (uniform `dμ = d²z/(π(1−τ²))` on an ellipse; `τ = 0` is Ginibre).
//!
//! For the triangle with vertices `ζ₀ + a e^{iθ₀}·{e^{−iπ/3}, e^{iπ/3}, −1}`
//! the density on the edge chart `z = ζ₀ + e^{i(θ₀+2πj/3)}(a/2 + iy)` is the
//! same parabola on all three edges:
//!
//! ```text
//! dν/dy = (3a² − 4y²) / (8πa(1−τ²)),    y ∈ (−√3a/2, √3a/2),
//! ```
//!
//! vanishing at the corners.

use super::{invalid, BalayageDensity, BalayageError, DensitySegment, MeasureKind};
use crate::model::HoleRegion;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Edge density as a function of the edge parameter `y`.
pub fn triangle_edge_density(tau: f64, a: f64, y: f64) -> f64 {
    (3.0 * a * a - 4.0 * y * y) / (8.0 * PI * a * (1.0 - tau * tau))
}

fn inside_droplet(tau: f64, z: Complex64) -> bool {
    let (sa, sc) = (1.0 + tau, 1.0 - tau);
    (z.re / sa).powi(2) + (z.im / sc).powi(2) <= 1.0 + 1e-12
}

/// Stitch the parabolic edge density onto the region's three edge charts.
pub(crate) fn dispatch_triangle(
    tau: f64,
    center: Complex64,
    theta0: f64,
    a: f64,
    region: &HoleRegion,
) -> Result<BalayageDensity, BalayageError> {
    if !(0.0..1.0).contains(&tau) {
        return Err(invalid(format!("need τ ∈ [0,1), got {tau}")));
    }
    // Convexity: vertex containment puts the whole triangle in the droplet.
    for j in 0..3 {
        let v = Complex64::from_polar(1.0, -PI / 3.0 + 2.0 * PI * j as f64 / 3.0);
        let z = center + Complex64::from_polar(a, theta0) * v;
        if !inside_droplet(tau, z) {
            return Err(invalid(format!(
                "triangle vertex {z} lies outside the droplet ellipse ({}, {})",
                1.0 + tau,
                1.0 - tau
            )));
        }
    }
    let area = 3.0 * 3.0f64.sqrt() / 4.0 * a * a;
    let total_mass = area / (PI * (1.0 - tau * tau));
    let segments = region
        .charts()
        .into_iter()
        .map(|chart| DensitySegment {
            chart,
            kind: MeasureKind::PerArclength,
            density: Box::new(move |y| triangle_edge_density(tau, a, y)),
        })
        .collect();
    Ok(BalayageDensity { segments, total_mass })
}
