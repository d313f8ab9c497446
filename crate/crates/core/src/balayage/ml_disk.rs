//! Swept measure for a disk hole `U = {|z − x₀| < a}` inside the droplet of
//! `Q = |z|^{2b}` with integer `b ≥ 1` (`b = 1` is the uniform Ginibre
//! droplet, where any off-center disk is allowed by rotation invariance).
//!
//! The density is a trigonometric polynomial of degree `b − 1` in the angle
//! on the hole's own boundary circle,
//!
//! ```text
//! dν(x₀ + a e^{iθ}) = (c₀ + 2 Σ_{ℓ=1}^{b−1} c_ℓ cos ℓθ) dθ/π,
//! ```
//!
//! with coefficients polynomial in `x₀` and `a`.

use super::{chart_by_id, invalid, BalayageDensity, BalayageError, DensitySegment, FourierProfile,
            MeasureKind};
use crate::model::HoleRegion;
use num_complex::Complex64;

/// `C(n, k)` as a float (exact for the small arguments used here).
pub(crate) fn binom(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut v = 1.0;
    for j in 0..k {
        v = v * (n - j) as f64 / (j + 1) as f64;
    }
    v
}

/// Cosine coefficients of the swept measure of `{|z − x₀| < a}`, `x₀ ≥ 0`,
/// under `Q = |z|^{2b}`:
///
/// ```text
/// c_ℓ = (b²/a^ℓ) Σ_{k ≥ ℓ, k ≡ ℓ (2)}^{b−1} C(b−1,k) C(k,(k−ℓ)/2) x₀^k
///        Σ_{m=0}^{b−1−k} C(b−1−k,m) x₀^{2(b−1−k−m)} a^{2+ℓ+k+2m}/(2+ℓ+k+2m).
/// ```
pub fn bal_ml_disk(b: u32, x0: f64, a: f64) -> Result<FourierProfile, BalayageError> {
    if b < 1 {
        return Err(invalid("disk sweep needs integer b >= 1"));
    }
    if !(x0 >= 0.0 && a > 0.0) {
        return Err(invalid(format!("need x0 >= 0 and a > 0, got x0 = {x0}, a = {a}")));
    }
    let rim = (b as f64).powf(-1.0 / (2.0 * b as f64));
    if x0 + a > rim + crate::model::EPS_GEO {
        return Err(invalid(format!(
            "disk must stay inside the droplet: x0 + a = {} exceeds the droplet radius {rim}",
            x0 + a
        )));
    }
    let bf = b as f64;
    let coefficients = (0..b)
        .map(|l| {
            let mut c = 0.0;
            for k in l..b {
                if (k - l) % 2 != 0 {
                    continue;
                }
                let mut inner = 0.0;
                for m in 0..=(b - 1 - k) {
                    let pow = 2 + l + k + 2 * m;
                    inner += binom(b - 1 - k, m)
                        * x0.powi((2 * (b - 1 - k - m)) as i32)
                        * a.powi(pow as i32)
                        / pow as f64;
                }
                c += binom(b - 1, k) * binom(k, (k - l) / 2) * x0.powi(k as i32) * inner;
            }
            bf * bf / a.powi(l as i32) * c
        })
        .collect();
    Ok(FourierProfile { coefficients, stride: 1 })
}

/// Stitch the disk profile onto the region's `circle` chart.  A center off
/// the positive real axis is handled by rotating the frame: the density at
/// chart angle `t` is the axis-aligned profile at `t − arg(center)`.
pub(crate) fn dispatch_disk(
    b: u32,
    center: Complex64,
    a: f64,
    region: &HoleRegion,
) -> Result<BalayageDensity, BalayageError> {
    let phase = center.arg();
    let profile = bal_ml_disk(b, center.norm(), a)?;
    let total_mass = profile.mass();
    let chart = chart_by_id(region, "circle");
    Ok(BalayageDensity {
        segments: vec![DensitySegment {
            chart,
            kind: MeasureKind::PerTheta,
            density: Box::new(move |t| profile.density(t - phase)),
        }],
        total_mass,
    })
}
