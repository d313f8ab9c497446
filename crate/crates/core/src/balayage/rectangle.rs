//! Swept measure for rectangle and square holes `(a₁,a₂)×(c₁,c₂)` inside
//! the droplet of `Q = |z|^{2b}` (integer `b`) or of the elliptic Ginibre
//! potential (uniform `dμ = d²z/(π(1−τ²))`).
//!
//! Each side carries a sine series in its own coordinate; on the right side
//! `z = a₂ + iy`,
//!
//! ```text
//! dν = Σ_{m≥1} 𝒞^R_{b,m} sin((y−c₁)mπ/Δc) dy,
//! ```
//!
//! and similarly for the other three sides.  The coefficients mix falling
//! factorials with the auxiliary brackets
//!
//! ```text
//! Kc(t,v) = [tπ coth(tπ) − 1]/(2t^{2v+2}) + Σ_{j<v} (−1)^{v+j} ζ(2v−2j)/t^{2+2j},
//! Ks(t,v) = [tπ/sinh(tπ) − 1]/(2t^{2v+2}) + Σ_{j<v} (−1)^{v+j}(2^{1−2(v−j)}−1) ζ(2v−2j)/t^{2+2j},
//! ```
//!
//! which are entire in `t`; for small `t` the bracket cancellation is traded
//! for the everywhere-convergent forms `Kc = Σ_{k>v} (−1)^{k+1} ζ(2k)
//! t^{2(k−v−1)}` and `Ks = −Σ_{k>v} (−1)^{k+1}(1−2^{1−2k}) ζ(2k)
//! t^{2(k−v−1)}` (the negative powers cancel the correction sums exactly).
//!
//! A centered square under `|z|^{2b}` has the same series on all four sides
//! with even modes vanishing; re-centering the sine basis turns it into the
//! cosine form emitted by [`bal_square_cosine`]:
//! `dν = Σ_{m≥0} 𝒞_{b,m} cos((y/c)(1+2m)π) dy` with
//! `𝒞_{b,m} = (−1)^m 𝒞^R_{b,2m+1}`.
//!
//! Elliptic Ginibre is the `b = 1` case rescaled by `1/(1−τ²)`, where the
//! brackets collapse: `Kc(t,0) − Ks(t,0) = (π/2t) tanh(tπ/2)` leaves the
//! odd-mode coefficient `(4Δc/π³) tanh((Δa/Δc)mπ/2)/m²` on the vertical
//! sides.

use super::{chart_by_id, invalid, unsupported, BalayageDensity, BalayageError, DensitySegment,
            MeasureKind, SineSeries};
use crate::balayage::ml_disk::binom;
use crate::model::{HoleRegion, Potential};
use crate::specialfn::zeta_even;
use std::f64::consts::PI;

/// Which side of the rectangle a series lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RectSide {
    Right,
    Left,
    Top,
    Bottom,
}

/// Number of sine modes used when stitching a full `BalayageDensity`.
pub const DEFAULT_M_MAX: usize = 20_000;

/// `n!/(n−k)!` as a float (exact for the small arguments used here).
pub(crate) fn falling(n: u32, k: u32) -> f64 {
    let mut v = 1.0;
    for j in 0..k {
        v *= (n - j) as f64;
    }
    v
}

fn zeta2(m: u32) -> f64 {
    // Beyond the tabulated ζ(30) the first few terms of the defining series
    // are already below 1e−22 of the limit.
    zeta_even(m).unwrap_or_else(|_| {
        let p = -(m as i32);
        1.0 + 4.0f64.powi(p) + 9.0f64.powi(p) + 16.0f64.powi(p)
    })
}

/// The cosh-type bracket `Kc(t, v)`, entire in `t > 0`.
pub(crate) fn kc(t: f64, v: u32) -> f64 {
    bracket(t, v, false)
}

/// The sinh-type bracket `Ks(t, v)`, entire in `t > 0`.
pub(crate) fn ks(t: f64, v: u32) -> f64 {
    bracket(t, v, true)
}

fn bracket(t: f64, v: u32, sinh_type: bool) -> f64 {
    debug_assert!(t > 0.0);
    // Below the switch the power series converges geometrically in t² ≤ 1/4;
    // above it the closed bracket's cancellation stays within a few digits
    // for every v that occurs (the loss grows like t^{−2v−2} as t → 0, which
    // is exactly why the series regime must cover all small t).
    let switch = 0.5;
    if t < switch {
        let t2 = t * t;
        let mut sum = 0.0;
        let mut power = 1.0;
        for k in (v + 1)..=(v + 45) {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let factor = if sinh_type { -(1.0 - 0.5f64.powi(2 * k as i32 - 1)) } else { 1.0 };
            let term = sign * factor * zeta2(k) * power;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
            power *= t2;
        }
        return sum;
    }
    let x = t * PI;
    // x coth x − 1  resp.  x/sinh x − 1, stable for large x.
    let e2 = (-2.0 * x).exp();
    let core = if sinh_type {
        x * (2.0 * (-x).exp() / (1.0 - e2)) - 1.0
    } else {
        (x - 1.0) + 2.0 * x * e2 / (1.0 - e2)
    };
    let mut value = core / (2.0 * t.powi(2 * v as i32 + 2));
    for j in 0..v {
        let sign = if (v + j) % 2 == 0 { 1.0 } else { -1.0 };
        let factor = if sinh_type { 0.5f64.powi(2 * (v - j) as i32 - 1) - 1.0 } else { 1.0 };
        value += sign * factor * zeta2(v - j) / t.powi(2 + 2 * j as i32);
    }
    value
}

/// Sine coefficient `𝒞^{side}_{b,m}` (1-based `m`) of the swept measure of
/// `(a₁,a₂)×(c₁,c₂)` under `Q = |z|^{2b}`.
pub fn ml_sine_coefficient(
    b: u32,
    m: u32,
    side: RectSide,
    a1: f64,
    a2: f64,
    c1: f64,
    c2: f64,
) -> f64 {
    match side {
        RectSide::Right => vertical_coefficient(b, m, a1, a2, c1, c2, false),
        RectSide::Left => vertical_coefficient(b, m, a1, a2, c1, c2, true),
        // The problem is symmetric under swapping the axes: the top side is
        // the right side of the transposed rectangle, the bottom the left.
        RectSide::Top => vertical_coefficient(b, m, c1, c2, a1, a2, false),
        RectSide::Bottom => vertical_coefficient(b, m, c1, c2, a1, a2, true),
    }
}

/// `𝒞^R` (`far = false`) and `𝒞^L` (`far = true`) for the vertical sides:
///
/// ```text
/// 𝒞^R_{b,m} = (−4b²/(Δc π²)) Σ_ℓ C(b−1,ℓ) F1(ℓ) F2(ℓ),
/// F1(ℓ) = Σ_{v₁≤ℓ} (2ℓ)!/(2ℓ−2v₁)! (Δa/π)^{2v₁+1}
///          (a₂^{2ℓ−2v₁} Kc(α_m,v₁) − a₁^{2ℓ−2v₁} Ks(α_m,v₁)),
/// F2(ℓ) = Σ_{v₂≤b−1−ℓ} (2(b−1−ℓ))!/(2(b−1−ℓ−v₂))! (Δc/π)^{2v₂+1} (−1)^{v₂}
///          ((−1)^m c₂^{2(b−1−ℓ−v₂)} − c₁^{2(b−1−ℓ−v₂)}) / m^{2v₂+1},
/// ```
/// with `α_m = Δa·m/Δc`; the left side swaps `Kc ↔ Ks` and the overall sign.
fn vertical_coefficient(b: u32, m: u32, a1: f64, a2: f64, c1: f64, c2: f64, far: bool) -> f64 {
    let (da, dc) = (a2 - a1, c2 - c1);
    let mf = m as f64;
    let alpha_m = da * mf / dc;
    let parity = if m % 2 == 0 { 1.0 } else { -1.0 };
    let mut sum = 0.0;
    for l in 0..b {
        let mut f1 = 0.0;
        for v1 in 0..=l {
            let w = falling(2 * l, 2 * v1) * (da / PI).powi(2 * v1 as i32 + 1);
            let (k2, k1) = if far {
                (kc(alpha_m, v1), ks(alpha_m, v1))
            } else {
                (ks(alpha_m, v1), kc(alpha_m, v1))
            };
            f1 += w
                * (a2.powi(2 * (l - v1) as i32) * k1 - a1.powi(2 * (l - v1) as i32) * k2);
        }
        let bb = b - 1 - l;
        let mut f2 = 0.0;
        for v2 in 0..=bb {
            let w = falling(2 * bb, 2 * v2) * (dc / PI).powi(2 * v2 as i32 + 1);
            let sign = if v2 % 2 == 0 { 1.0 } else { -1.0 };
            f2 += w * sign
                * (parity * c2.powi(2 * (bb - v2) as i32) - c1.powi(2 * (bb - v2) as i32))
                / mf.powi(2 * v2 as i32 + 1);
        }
        sum += binom(b - 1, l) * f1 * f2;
    }
    let magnitude = 4.0 * (b * b) as f64 / (dc * PI * PI) * sum;
    if far {
        magnitude
    } else {
        -magnitude
    }
}

/// Elliptic Ginibre sine coefficient: `b = 1` collapses the brackets into a
/// single `tanh`, leaving only odd modes, scaled by the droplet density
/// `1/(1−τ²)`.
pub fn eg_sine_coefficient(
    tau: f64,
    m: u32,
    side: RectSide,
    a1: f64,
    a2: f64,
    c1: f64,
    c2: f64,
) -> f64 {
    if m % 2 == 0 {
        return 0.0;
    }
    let (dpar, dperp) = match side {
        RectSide::Right | RectSide::Left => (a2 - a1, c2 - c1),
        RectSide::Top | RectSide::Bottom => (c2 - c1, a2 - a1),
    };
    let mf = m as f64;
    4.0 * dperp / PI.powi(3) * (dpar / dperp * mf * PI / 2.0).tanh() / (mf * mf)
        / (1.0 - tau * tau)
}

/// Cosine coefficient `𝒞_{b,m}` (0-based `m`, frequency `1+2m`) of the
/// centered square `(−c/2, c/2)²` under `Q = |z|^{2b}`:
/// `dν = Σ_m 𝒞_{b,m} cos((y/c)(1+2m)π) dy` on the right side, repeated by
/// quarter-turn symmetry on the other three.
pub fn square_cosine_coefficient(b: u32, m: u32, c: f64) -> f64 {
    let mm = (1 + 2 * m) as f64;
    let th = (mm * PI / 2.0).tanh();
    let parity = if m % 2 == 0 { 1.0 } else { -1.0 };
    let mut sum = 0.0;
    for l in 0..b {
        let bb = b - 1 - l;
        for v1 in 0..=l {
            for v2 in 0..=bb {
                let w = binom(b - 1, l)
                    * falling(2 * l, 2 * v1)
                    * falling(2 * bb, 2 * v2)
                    * 4.0f64.powi((v1 + v2) as i32)
                    * if v2 % 2 == 0 { 1.0 } else { -1.0 }
                    / PI.powi(2 * (v1 + v2) as i32);
                let mut inner = 0.0;
                if (v1 + v2) % 2 == 0 {
                    inner += th / mm.powi(2 + 2 * (v1 + v2) as i32);
                }
                for q in 0..v1 {
                    let sign = if (v1 + q) % 2 == 0 { 1.0 } else { -1.0 };
                    inner += 4.0 * sign / (PI * mm.powi(3 + 2 * (v2 + q) as i32))
                        * (1.0 - 0.25f64.powi((v1 - q) as i32))
                        * zeta2(v1 - q);
                }
                sum += w * inner;
            }
        }
    }
    16.0 * (b * b) as f64 * c.powi(2 * b as i32 - 1) / (PI.powi(3) * 4.0f64.powi(b as i32))
        * parity
        * sum
}

/// All cosine coefficients `𝒞_{b,0..=m_max}` of the centered square.
pub fn bal_square_cosine(b: u32, c: f64, m_max: usize) -> Result<Vec<f64>, BalayageError> {
    if b < 1 {
        return Err(invalid("square sweep needs integer b >= 1"));
    }
    check_rect_in_ml_droplet(b, -c / 2.0, c / 2.0, -c / 2.0, c / 2.0)?;
    Ok((0..=m_max as u32).map(|m| square_cosine_coefficient(b, m, c)).collect())
}

/// Sine series of one side of a rectangle hole.
pub fn bal_rectangle(
    pot: &Potential,
    a1: f64,
    a2: f64,
    c1: f64,
    c2: f64,
    side: RectSide,
    m_max: usize,
) -> Result<SineSeries, BalayageError> {
    if m_max < 1 {
        return Err(invalid("need m_max >= 1"));
    }
    if !(a1 < a2 && c1 < c2) {
        return Err(invalid("need a1 < a2 and c1 < c2"));
    }
    let len = match side {
        RectSide::Right | RectSide::Left => c2 - c1,
        RectSide::Top | RectSide::Bottom => a2 - a1,
    };
    let coefficients = match pot {
        Potential::Ginibre => {
            check_rect_in_eg_droplet(0.0, a1, a2, c1, c2)?;
            (1..=m_max as u32)
                .map(|m| eg_sine_coefficient(0.0, m, side, a1, a2, c1, c2))
                .collect()
        }
        Potential::EllipticGinibre { tau } => {
            check_rect_in_eg_droplet(*tau, a1, a2, c1, c2)?;
            (1..=m_max as u32)
                .map(|m| eg_sine_coefficient(*tau, m, side, a1, a2, c1, c2))
                .collect()
        }
        Potential::MittagLeffler { b } => {
            let b = super::integer_b(*b)
                .ok_or_else(|| unsupported(format!("rectangle needs integer b, got b = {b}")))?;
            check_rect_in_ml_droplet(b, a1, a2, c1, c2)?;
            (1..=m_max as u32)
                .map(|m| ml_sine_coefficient(b, m, side, a1, a2, c1, c2))
                .collect()
        }
        other => {
            return Err(unsupported(format!(
                "rectangle holes are covered for the elliptic Ginibre family and integer-b |z|^(2b), got {other:?}"
            )))
        }
    };
    Ok(SineSeries { coefficients, len })
}

pub(crate) fn check_rect_in_ml_droplet(b: u32, a1: f64, a2: f64, c1: f64, c2: f64) -> Result<(), BalayageError> {
    let rim = (b as f64).powf(-1.0 / (2.0 * b as f64));
    let corner = a1.abs().max(a2.abs()).hypot(c1.abs().max(c2.abs()));
    if corner > rim + crate::model::EPS_GEO {
        return Err(invalid(format!(
            "rectangle corner at distance {corner} exceeds the droplet radius {rim}"
        )));
    }
    Ok(())
}

pub(crate) fn check_rect_in_eg_droplet(tau: f64, a1: f64, a2: f64, c1: f64, c2: f64) -> Result<(), BalayageError> {
    let (sa, sc) = (1.0 + tau, 1.0 - tau);
    for x in [a1, a2] {
        for y in [c1, c2] {
            if (x / sa).powi(2) + (y / sc).powi(2) > 1.0 + 1e-12 {
                return Err(invalid(format!(
                    "rectangle corner ({x}, {y}) lies outside the droplet ellipse ({sa}, {sc})"
                )));
            }
        }
    }
    Ok(())
}

/// Droplet measure of the rectangle, in closed form.
pub(crate) fn rect_mu_mass(
    pot: &Potential,
    a1: f64,
    a2: f64,
    c1: f64,
    c2: f64,
) -> Result<f64, BalayageError> {
    match pot {
        Potential::Ginibre => Ok((a2 - a1) * (c2 - c1) / PI),
        Potential::EllipticGinibre { tau } => {
            Ok((a2 - a1) * (c2 - c1) / (PI * (1.0 - tau * tau)))
        }
        Potential::MittagLeffler { b } => {
            let b = super::integer_b(*b)
                .ok_or_else(|| unsupported(format!("rectangle needs integer b, got b = {b}")))?;
            let mut sum = 0.0;
            for j in 0..b {
                let sx = 2 * j as i32;
                let sy = 2 * (b - 1 - j) as i32;
                sum += binom(b - 1, j)
                    * (a2.powi(sx + 1) - a1.powi(sx + 1)) / (sx + 1) as f64
                    * (c2.powi(sy + 1) - c1.powi(sy + 1)) / (sy + 1) as f64;
            }
            Ok((b * b) as f64 / PI * sum)
        }
        other => Err(unsupported(format!("no rectangle coverage for {other:?}"))),
    }
}

/// Stitch the four side series (or the centered-square cosine form) onto the
/// region's charts.
pub(crate) fn dispatch_rectangle(
    pot: &Potential,
    a1: f64,
    a2: f64,
    c1: f64,
    c2: f64,
    region: &HoleRegion,
) -> Result<BalayageDensity, BalayageError> {
    let total_mass = rect_mu_mass(pot, a1, a2, c1, c2)?;
    if let HoleRegion::Square { c } = region {
        // Quarter-turn symmetric fast path: same cosine series on all sides.
        let coefficients: Vec<f64> = match pot {
            Potential::Ginibre => bal_square_cosine(1, *c, DEFAULT_M_MAX / 2)?,
            Potential::EllipticGinibre { tau } => {
                check_rect_in_eg_droplet(*tau, a1, a2, c1, c2)?;
                let scale = 1.0 / (1.0 - tau * tau);
                bal_square_cosine(1, *c, DEFAULT_M_MAX / 2)?
                    .into_iter()
                    .map(|v| v * scale)
                    .collect()
            }
            Potential::MittagLeffler { b } => {
                let b = super::integer_b(*b).ok_or_else(|| {
                    unsupported(format!("square needs integer b, got b = {b}"))
                })?;
                bal_square_cosine(b, *c, DEFAULT_M_MAX / 2)?
            }
            other => {
                return Err(unsupported(format!(
                    "square holes are covered for the elliptic Ginibre family and integer-b |z|^(2b), got {other:?}"
                )))
            }
        };
        let c = *c;
        let segments = ["right", "top", "left", "bottom"]
            .into_iter()
            .map(|id| {
                let coeffs = coefficients.clone();
                DensitySegment {
                    chart: chart_by_id(region, id),
                    kind: if id == "right" || id == "left" {
                        MeasureKind::PerDy
                    } else {
                        MeasureKind::PerDx
                    },
                    density: Box::new(move |t| {
                        coeffs
                            .iter()
                            .enumerate()
                            .map(|(m, &co)| co * (t / c * (1 + 2 * m) as f64 * PI).cos())
                            .sum()
                    }),
                }
            })
            .collect();
        return Ok(BalayageDensity { segments, total_mass });
    }
    let sides = [
        ("right", RectSide::Right, c1, MeasureKind::PerDy),
        ("top", RectSide::Top, a1, MeasureKind::PerDx),
        ("left", RectSide::Left, c1, MeasureKind::PerDy),
        ("bottom", RectSide::Bottom, a1, MeasureKind::PerDx),
    ];
    let mut segments = Vec::new();
    for (id, side, origin, kind) in sides {
        let series = bal_rectangle(pot, a1, a2, c1, c2, side, DEFAULT_M_MAX)?;
        segments.push(DensitySegment {
            chart: chart_by_id(region, id),
            kind,
            density: Box::new(move |t| series.density(t - origin)),
        });
    }
    Ok(BalayageDensity { segments, total_mass })
}
