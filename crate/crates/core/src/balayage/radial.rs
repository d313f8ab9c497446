//! Swept measures for rotation-invariant potentials with centered circular
//! holes: disk, annulus, and the complement of a disk.  All three densities
//! are uniform in the angle; only the masses (and, for the annulus, the
//! split between the two circles) need computing.

use super::{chart_by_id, invalid, BalayageDensity, BalayageError, DensitySegment, MeasureKind};
use crate::model::{HoleRegion, Potential, RadialMeasure};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// `r g′(r)` with the convention that the value is 0 at `r = 0` (where the
/// product has a removable zero even when `g′` is singular).
fn edge(rad: &RadialMeasure, r: f64) -> f64 {
    if r <= 0.0 {
        0.0
    } else if r.is_infinite() {
        // r g′(r) tends to a finite limit for any finite-mass gas (e.g. 2 on
        // the sphere); evaluate far out instead of multiplying ∞ · 0.
        let big = 1e150;
        big * rad.g1(big)
    } else {
        r * rad.g1(r)
    }
}

/// Mass `∫_{lo}^{hi} dμ_rad` summed ring by ring from the fundamental
/// theorem: within one ring, `dμ_rad = ½ d(r g′(r))`.
fn ring_mass(rad: &RadialMeasure, lo: f64, hi: f64) -> f64 {
    let mut total = 0.0;
    for &(r0, r1) in rad.rings() {
        let a = lo.max(r0);
        let b = hi.min(r1);
        if b > a {
            total += 0.5 * (edge(rad, b) - edge(rad, a));
        }
    }
    total
}

fn radial_of(pot: &Potential) -> Result<RadialMeasure, BalayageError> {
    pot.radial_measure().ok_or_else(|| {
        super::unsupported(format!("potential is not rotation-invariant: {pot:?}"))
    })
}

fn require_in_rings(rad: &RadialMeasure, r: f64, label: &str) -> Result<(), BalayageError> {
    if rad.in_rings(r) {
        Ok(())
    } else {
        Err(invalid(format!("{label} = {r} lies outside the droplet rings {:?}", rad.rings())))
    }
}

/// Uniform circle density for the hole `U = {|z| < a}`.
pub fn bal_radial_disk(pot: &Potential, a: f64) -> Result<BalayageDensity, BalayageError> {
    let rad = radial_of(pot)?;
    if a <= 0.0 {
        return Err(invalid("disk radius must be positive"));
    }
    require_in_rings(&rad, a, "disk radius a")?;
    let mass = ring_mass(&rad, 0.0, a);
    let per_theta = mass / TAU;
    let region = HoleRegion::Disk { center: Complex64::new(0.0, 0.0), a };
    Ok(BalayageDensity {
        segments: vec![DensitySegment {
            chart: chart_by_id(&region, "circle"),
            kind: MeasureKind::PerTheta,
            density: Box::new(move |_| per_theta),
        }],
        total_mass: mass,
    })
}

/// Two uniform circles for the hole `U = {ρ₁ < |z| < ρ₂}`: the inner circle
/// carries `λ κ`, the outer `(1−λ) κ`, where `κ = μ_rad([ρ₁, ρ₂])` and `λ`
/// interpolates the mean of `log r` between the endpoints.
pub fn bal_radial_annulus(
    pot: &Potential,
    rho1: f64,
    rho2: f64,
) -> Result<BalayageDensity, BalayageError> {
    let rad = radial_of(pot)?;
    if !(0.0 < rho1 && rho1 < rho2) {
        return Err(invalid("annulus radii must satisfy 0 < rho1 < rho2"));
    }
    require_in_rings(&rad, rho1, "inner radius rho1")?;
    require_in_rings(&rad, rho2, "outer radius rho2")?;
    let kappa = ring_mass(&rad, rho1, rho2);
    let lambda = if kappa <= 0.0 {
        0.5
    } else {
        (rho2.ln() - rad.log_moment(rho1, rho2) / kappa) / (rho2 / rho1).ln()
    };
    let inner = lambda * kappa / TAU;
    let outer = (1.0 - lambda) * kappa / TAU;
    let region = HoleRegion::Annulus { rho1, rho2 };
    Ok(BalayageDensity {
        segments: vec![
            DensitySegment {
                chart: chart_by_id(&region, "inner"),
                kind: MeasureKind::PerTheta,
                density: Box::new(move |_| inner),
            },
            DensitySegment {
                chart: chart_by_id(&region, "outer"),
                kind: MeasureKind::PerTheta,
                density: Box::new(move |_| outer),
            },
        ],
        total_mass: kappa,
    })
}

/// Fraction `λ` of the annulus mass swept to the inner circle (exposed for
/// tests and the constants module).
pub fn annulus_split(pot: &Potential, rho1: f64, rho2: f64) -> Result<(f64, f64), BalayageError> {
    let rad = radial_of(pot)?;
    let kappa = ring_mass(&rad, rho1, rho2);
    let lambda = (rho2.ln() - rad.log_moment(rho1, rho2) / kappa) / (rho2 / rho1).ln();
    Ok((kappa, lambda))
}

/// Uniform circle density for the unbounded hole `U = {|z| > a}`.
pub fn bal_radial_disk_complement(
    pot: &Potential,
    a: f64,
) -> Result<BalayageDensity, BalayageError> {
    let rad = radial_of(pot)?;
    if a <= 0.0 {
        return Err(invalid("disk radius must be positive"));
    }
    require_in_rings(&rad, a, "disk radius a")?;
    let mass = ring_mass(&rad, a, f64::INFINITY);
    let per_theta = mass / TAU;
    let region = HoleRegion::DiskComplement { center: Complex64::new(0.0, 0.0), a };
    Ok(BalayageDensity {
        segments: vec![DensitySegment {
            chart: chart_by_id(&region, "circle"),
            kind: MeasureKind::PerTheta,
            density: Box::new(move |_| per_theta),
        }],
        total_mass: mass,
    })
}
