//! Swept measures for unbounded holes in the elliptic Ginibre droplet
//! (`dμ = d²z/(π(1−τ²))` on the ellipse with semi-axes `1±τ`; `τ = 0` is
//! Ginibre): the complement of a centered axis-aligned ellipse and the
//! complement of an arbitrary disk contained in the droplet.
//!
//! Both densities are short trigonometric polynomials in the boundary
//! angle, written per `dθ` (no `1/π`): the ellipse complement carries
//! `c₀ + 2c₁ cos 2θ` on `z = a cos θ + i c sin θ`, the disk complement a
//! degree-2 polynomial on `z = z₀ + a e^{iθ}`.

use super::{chart_by_id, invalid, BalayageDensity, BalayageError, DensitySegment, MeasureKind,
            TrigPolynomial};
use crate::model::HoleRegion;
use std::f64::consts::PI;

/// Cosine coefficients `(c₀, c₁)` of the swept measure of the ellipse
/// complement `U = {x²/a² + y²/c² > 1}`:
///
/// ```text
/// dν = (c₀ + 2c₁ cos 2θ) dθ,
/// c₀ = (1−τ²−ac) / (2π(1−τ²)),
/// c₁ = (a+c)((a+c)τ − (a−c)) / (8π(1−τ²)).
/// ```
///
/// When the hole boundary has the droplet's own eccentricity
/// (`a/(1+τ) = c/(1−τ)`) the oscillating mode vanishes, and at
/// `a = 1+τ, c = 1−τ` the sweep is empty.
pub fn bal_eg_complement_ellipse(tau: f64, a: f64, c: f64) -> Result<(f64, f64), BalayageError> {
    check_tau(tau)?;
    if !(a > 0.0 && c > 0.0
        && a <= 1.0 + tau + crate::model::EPS_GEO
        && c <= 1.0 - tau + crate::model::EPS_GEO)
    {
        return Err(invalid(format!(
            "ellipse-complement boundary must sit inside the droplet: need a ∈ (0, {}], c ∈ (0, {}], got a = {a}, c = {c}",
            1.0 + tau,
            1.0 - tau
        )));
    }
    let norm = 1.0 - tau * tau;
    let c0 = (norm - a * c) / (2.0 * PI * norm);
    let c1 = (a + c) * ((a + c) * tau - (a - c)) / (8.0 * PI * norm);
    Ok((c0, c1))
}

/// Swept measure of the disk complement `U = {|z − (x₀+iy₀)| > a}` as a
/// trigonometric polynomial per `dθ` at `z = z₀ + a e^{iθ}`:
///
/// ```text
/// dν/dθ = (a/(π(1−τ²))) ((1−τ²)/2a − a/2 − x₀(1−τ)cos θ
///          − y₀(1+τ)sin θ + aτ cos 2θ).
/// ```
pub fn bal_eg_complement_disk(
    tau: f64,
    x0: f64,
    y0: f64,
    a: f64,
) -> Result<TrigPolynomial, BalayageError> {
    check_tau(tau)?;
    if !(a > 0.0) {
        return Err(invalid(format!("need a > 0, got {a}")));
    }
    // The removed disk must fit in the droplet ellipse.
    let (sa, sc) = (1.0 + tau, 1.0 - tau);
    for k in 0..2048 {
        let phi = std::f64::consts::TAU * k as f64 / 2048.0;
        let (x, y) = (x0 + a * phi.cos(), y0 + a * phi.sin());
        if (x / sa).powi(2) + (y / sc).powi(2) > 1.0 + 1e-9 {
            return Err(invalid(format!(
                "disk of radius {a} at ({x0}, {y0}) exits the droplet ellipse ({sa}, {sc})"
            )));
        }
    }
    let norm = 1.0 - tau * tau;
    let scale = a / (PI * norm);
    Ok(TrigPolynomial {
        constant: scale * (norm / (2.0 * a) - a / 2.0),
        cos: vec![-scale * x0 * (1.0 - tau), scale * a * tau],
        sin: vec![-scale * y0 * (1.0 + tau), 0.0],
    })
}

fn check_tau(tau: f64) -> Result<(), BalayageError> {
    if (0.0..1.0).contains(&tau) {
        Ok(())
    } else {
        Err(invalid(format!("need τ ∈ [0,1), got {tau}")))
    }
}

pub(crate) fn dispatch_ellipse_complement(
    tau: f64,
    a: f64,
    c: f64,
    region: &HoleRegion,
) -> Result<BalayageDensity, BalayageError> {
    let (c0, c1) = bal_eg_complement_ellipse(tau, a, c)?;
    let total_mass = 1.0 - a * c / (1.0 - tau * tau);
    Ok(BalayageDensity {
        segments: vec![DensitySegment {
            chart: chart_by_id(region, "ellipse"),
            kind: MeasureKind::PerTheta,
            density: Box::new(move |t| c0 + 2.0 * c1 * (2.0 * t).cos()),
        }],
        total_mass,
    })
}

pub(crate) fn dispatch_disk_complement(
    tau: f64,
    x0: f64,
    y0: f64,
    a: f64,
    region: &HoleRegion,
) -> Result<BalayageDensity, BalayageError> {
    let trig = bal_eg_complement_disk(tau, x0, y0, a)?;
    let total_mass = trig.mass();
    Ok(BalayageDensity {
        segments: vec![DensitySegment {
            chart: chart_by_id(region, "circle"),
            kind: MeasureKind::PerTheta,
            density: Box::new(move |t| trig.density(t)),
        }],
        total_mass,
    })
}
