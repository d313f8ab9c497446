//! Swept measure for a centered, axis-aligned ellipse hole
//! `U = {x²/a² + y²/c² < 1}` inside the droplet of `Q = |z|^{2b}`,
//! integer `b ≥ 1`.
//!
//! With the half-axis combinations `α = (a+c)/2`, `γ = (a−c)/2` the density
//! on `z = a cos θ + i c sin θ` is the even cosine polynomial
//!
//! ```text
//! dν = (c₀ + 2 Σ_{ℓ=1}^b c_ℓ cos 2ℓθ) dθ/π,
//! ```
//!
//! whose coefficients combine the rational arrays `d_ℓ^{(k)}` from
//! [`crate::identities::d_coeffs`] with polynomials in `α, γ`.  The quotient
//! `(αγ)^ℓ/(α^{2ℓ} + γ^{2ℓ})` is kept in ratio form so round disks (`γ = 0`)
//! and thin ellipses stay exact.

use super::{chart_by_id, invalid, BalayageDensity, BalayageError, DensitySegment, FourierProfile,
            MeasureKind};
use crate::balayage::ml_disk::binom;
use crate::identities::d_coeffs;
use crate::model::HoleRegion;

/// Cosine coefficients `c₀ … c_b` (stride-2 profile) of the swept measure.
pub fn bal_ml_ellipse(b: u32, a: f64, c: f64) -> Result<FourierProfile, BalayageError> {
    if b < 1 {
        return Err(invalid("ellipse sweep needs integer b >= 1"));
    }
    let rim = (b as f64).powf(-1.0 / (2.0 * b as f64));
    if !(a > 0.0 && c > 0.0 && a <= rim + crate::model::EPS_GEO && c <= rim + crate::model::EPS_GEO)
    {
        return Err(invalid(format!(
            "ellipse half-axes must lie in (0, {rim}], got a = {a}, c = {c}"
        )));
    }
    let alpha = 0.5 * (a + c);
    let gamma = 0.5 * (a - c);
    let (a2, g2) = (alpha * alpha, gamma * gamma);
    // d-arrays for every charge index k; d[k][ℓ−k] is d_ℓ^{(k)}.
    let d: Vec<Vec<f64>> = (0..b).map(|k| d_coeffs(b, k)).collect();
    // e_ℓ  =  (ac b²/2) Σ_j C(b−1,j) (α²+γ²)^{b−1−j}
    //          Σ_{k≤j, k≡j (2)} ((1+1_{k≠0})/2)(α^{j+k}γ^{j−k}+α^{j−k}γ^{j+k})
    //          C(j,(j−k)/2) d_ℓ^{(k)}
    let e = |l: u32| -> f64 {
        let mut sum = 0.0;
        for j in 0..b {
            let mut inner = 0.0;
            for k in (j % 2..=j).step_by(2) {
                if l < k {
                    continue;
                }
                let dval = d[k as usize][(l - k) as usize];
                let weight = if k == 0 { 1.0 } else { 2.0 };
                inner += 0.5
                    * weight
                    * (alpha.powi((j + k) as i32) * gamma.powi((j - k) as i32)
                        + alpha.powi((j - k) as i32) * gamma.powi((j + k) as i32))
                    * binom(j, (j - k) / 2)
                    * dval;
            }
            sum += binom(b - 1, j) * (a2 + g2).powi((b - 1 - j) as i32) * inner;
        }
        (a2 - g2) * (b * b) as f64 / 2.0 * sum
    };
    let mut coefficients = Vec::with_capacity(b as usize + 1);
    coefficients.push(e(0));
    for l in 1..=b {
        let ratio = (alpha * gamma).powi(l as i32)
            / (alpha.powi(2 * l as i32) + gamma.powi(2 * l as i32));
        coefficients.push(e(l) * ratio);
    }
    Ok(FourierProfile { coefficients, stride: 2 })
}

/// Stitch the ellipse profile onto the region's `ellipse` chart (the chart
/// parameter is the same θ the profile is written in).
pub(crate) fn dispatch_ellipse(
    b: u32,
    a: f64,
    c: f64,
    region: &HoleRegion,
) -> Result<BalayageDensity, BalayageError> {
    let profile = bal_ml_ellipse(b, a, c)?;
    let total_mass = profile.mass();
    Ok(BalayageDensity {
        segments: vec![DensitySegment {
            chart: chart_by_id(region, "ellipse"),
            kind: MeasureKind::PerTheta,
            density: Box::new(move |t| profile.density(t)),
        }],
        total_mass,
    })
}
