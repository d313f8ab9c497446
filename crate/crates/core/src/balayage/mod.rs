//! Balayage densities: the sweep of `μ|_U` onto `∂U`, chart by chart.
//!
//! Every hole family with a closed-form swept measure gets its own submodule;
//! [`balayage`] dispatches a `(Potential, HoleRegion)` pair to the right one
//! and returns the density stitched onto the region's boundary charts.  The
//! `green` and `square_map` submodules are independent cross-checking oracles
//! (Green-function quadrature and an elliptic-function conformal map) rather
//! than closed forms.

pub mod eg_complement;
pub mod green;
pub mod ml_disk;
pub mod ml_ellipse;
pub mod radial;
pub mod rectangle;
pub mod sector;
pub mod square_map;
pub mod triangle;

use crate::model::{Chart, HoleRegion, ModelError, Potential};
use crate::oracle::QuadError;
use num_complex::Complex64;

/// How a chart's density is normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureKind {
    /// dν = density(θ) dθ
    PerTheta,
    /// dν = density(t) |dz| along the chart
    PerArclength,
    /// dν = density(y) dy on a vertical side
    PerDy,
    /// dν = density(x) dx on a horizontal side
    PerDx,
}

impl MeasureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MeasureKind::PerTheta => "per-dtheta",
            MeasureKind::PerArclength => "per-arclength",
            MeasureKind::PerDy => "per-dy",
            MeasureKind::PerDx => "per-dx",
        }
    }
}

/// Density of the swept measure on one boundary chart.
pub struct DensitySegment {
    pub chart: Chart,
    pub kind: MeasureKind,
    pub density: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for DensitySegment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DensitySegment")
            .field("chart", &self.chart.id)
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

impl DensitySegment {
    /// Mass carried by this segment, by direct quadrature of the density
    /// (the chart parameter is the integration variable for every
    /// `MeasureKind` except `PerArclength`, which weighs in the chart speed).
    pub fn mass(&self, tol: f64) -> Result<f64, BalayageError> {
        let r = match self.kind {
            MeasureKind::PerArclength => crate::oracle::quad1d(
                |t| (self.density)(t) * self.chart.speed(t),
                self.chart.t0,
                self.chart.t1,
                tol,
            )?,
            _ => crate::oracle::quad1d(|t| (self.density)(t), self.chart.t0, self.chart.t1, tol)?,
        };
        Ok(r.value)
    }
}

/// The full swept measure `ν = Bal(μ|_U, ∂U)`.
pub struct BalayageDensity {
    pub segments: Vec<DensitySegment>,
    /// Mass carried by all segments; equals `μ(U)`.
    pub total_mass: f64,
}

impl std::fmt::Debug for BalayageDensity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BalayageDensity")
            .field("segments", &self.segments)
            .field("total_mass", &self.total_mass)
            .finish()
    }
}

impl BalayageDensity {
    /// Sum of per-segment masses by quadrature (cross-check against
    /// `total_mass`).
    pub fn quadrature_mass(&self, tol: f64) -> Result<f64, BalayageError> {
        let mut total = 0.0;
        for seg in &self.segments {
            total += seg.mass(tol)?;
        }
        Ok(total)
    }

    /// Integrate `f(z)` against the swept measure: `∮ f dν`.
    pub fn integrate(
        &self,
        f: impl Fn(Complex64) -> f64 + Copy,
        tol: f64,
    ) -> Result<f64, BalayageError> {
        let mut total = 0.0;
        for seg in &self.segments {
            let chart = seg.chart.clone();
            let weight: Box<dyn Fn(f64) -> f64> = match seg.kind {
                MeasureKind::PerArclength => Box::new(move |t| chart.speed(t)),
                _ => Box::new(|_| 1.0),
            };
            let r = crate::oracle::quad1d(
                |t| f(seg.chart.point(t)) * (seg.density)(t) * weight(t),
                seg.chart.t0,
                seg.chart.t1,
                tol,
            )?;
            total += r.value;
        }
        Ok(total)
    }
}

/// Cosine-series profile of a density in a boundary angle:
/// density(θ) = (c₀ + 2 Σ_{ℓ≥1} c_ℓ cos(stride·ℓ·θ)) / π   per dθ.
///
/// `stride` is 1 for circle charts and 2 for ellipse charts.
#[derive(Clone, Debug)]
pub struct FourierProfile {
    pub coefficients: Vec<f64>,
    pub stride: u32,
}

impl FourierProfile {
    pub fn density(&self, theta: f64) -> f64 {
        let mut v = self.coefficients[0];
        for (l, &c) in self.coefficients.iter().enumerate().skip(1) {
            v += 2.0 * c * ((self.stride * l as u32) as f64 * theta).cos();
        }
        v / std::f64::consts::PI
    }

    /// Total mass over θ ∈ [0, 2π): only the constant mode survives.
    pub fn mass(&self) -> f64 {
        2.0 * self.coefficients[0]
    }
}

/// A finite trigonometric polynomial density per dθ:
/// density(θ) = const + Σ_k (cos_k cos(kθ) + sin_k sin(kθ)).
#[derive(Clone, Debug)]
pub struct TrigPolynomial {
    pub constant: f64,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl TrigPolynomial {
    pub fn density(&self, theta: f64) -> f64 {
        let mut v = self.constant;
        for (k, &c) in self.cos.iter().enumerate() {
            v += c * ((k + 1) as f64 * theta).cos();
        }
        for (k, &s) in self.sin.iter().enumerate() {
            v += s * ((k + 1) as f64 * theta).sin();
        }
        v
    }

    pub fn mass(&self) -> f64 {
        std::f64::consts::TAU * self.constant
    }
}

/// Sine series on a side chart of length `len`:
/// density(t) = Σ_{m≥1} coeff[m−1] · sin(t m π / len) for t ∈ (0, len),
/// where `t` is the offset from the side's starting corner.
#[derive(Clone, Debug)]
pub struct SineSeries {
    pub coefficients: Vec<f64>,
    pub len: f64,
}

impl SineSeries {
    pub fn density(&self, t: f64) -> f64 {
        let x = std::f64::consts::PI * t / self.len;
        let mut v = 0.0;
        for (i, &c) in self.coefficients.iter().enumerate() {
            v += c * ((i + 1) as f64 * x).sin();
        }
        v
    }

    /// Exact term-by-term mass: ∫₀^len sin(mπt/len) dt = len (1−(−1)^m)/(mπ).
    pub fn mass(&self) -> f64 {
        let mut v = 0.0;
        for (i, &c) in self.coefficients.iter().enumerate() {
            let m = (i + 1) as f64;
            if i % 2 == 0 {
                v += c * 2.0 * self.len / (m * std::f64::consts::PI);
            }
        }
        v
    }
}

#[derive(Debug)]
pub enum BalayageError {
    /// Parameters violate a precondition (containment, range, …).
    Invalid { what: String },
    /// No closed-form swept measure exists for this (potential, region) pair.
    Unsupported { what: String },
    /// An internal quadrature could not meet its tolerance.
    Quadrature { what: String },
}

impl std::fmt::Display for BalayageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BalayageError::Invalid { what } => write!(f, "invalid parameters: {what}"),
            BalayageError::Unsupported { what } => write!(f, "unsupported case: {what}"),
            BalayageError::Quadrature { what } => write!(f, "quadrature failure: {what}"),
        }
    }
}

impl std::error::Error for BalayageError {}

impl From<QuadError> for BalayageError {
    fn from(e: QuadError) -> Self {
        BalayageError::Quadrature { what: e.to_string() }
    }
}

impl From<ModelError> for BalayageError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Quadrature { what } => BalayageError::Quadrature { what },
            other => BalayageError::Invalid { what: other.to_string() },
        }
    }
}

pub(crate) fn invalid(what: impl Into<String>) -> BalayageError {
    BalayageError::Invalid { what: what.into() }
}

pub(crate) fn unsupported(what: impl Into<String>) -> BalayageError {
    BalayageError::Unsupported { what: what.into() }
}

/// Find the chart with the given id on a region's boundary.
pub(crate) fn chart_by_id(region: &HoleRegion, id: &str) -> Chart {
    region
        .charts()
        .into_iter()
        .find(|c| c.id == id)
        .unwrap_or_else(|| panic!("region has no chart `{id}`"))
}

/// Compute the swept measure `ν = Bal(μ|_U, ∂U)` for every covered
/// `(potential, region)` pair.
///
/// Covered pairs: any rotation-invariant potential with centered disk,
/// annulus, disk complement, or sector holes; Mittag-Leffler with integer
/// `b` (Ginibre being `b = 1`) for off-center disks, centered ellipses,
/// rectangles, and squares; elliptic Ginibre for rectangles, squares,
/// equilateral triangles, and the complements of disks and ellipses.
/// The cardioid has no closed-form swept measure and is rejected.
pub fn balayage(pot: &Potential, region: &HoleRegion) -> Result<BalayageDensity, BalayageError> {
    pot.check()?;
    region.check()?;
    match region {
        HoleRegion::Disk { center, a } => {
            if center.norm() < crate::model::EPS_GEO {
                if pot.radial_measure().is_some() {
                    return radial::bal_radial_disk(pot, *a);
                }
                return Err(unsupported(format!(
                    "centered disk requires a rotation-invariant potential, got {pot:?}"
                )));
            }
            let b = match pot {
                Potential::Ginibre => 1,
                Potential::MittagLeffler { b } => integer_b(*b).ok_or_else(|| {
                    unsupported(format!("off-center disk needs integer b, got b = {b}"))
                })?,
                _ => {
                    return Err(unsupported(format!(
                        "off-center disk is covered only for |z|^(2b) potentials, got {pot:?}"
                    )))
                }
            };
            ml_disk::dispatch_disk(b, *center, *a, region)
        }
        HoleRegion::Annulus { rho1, rho2 } => radial::bal_radial_annulus(pot, *rho1, *rho2),
        HoleRegion::DiskComplement { center, a } => match pot {
            Potential::Ginibre => {
                eg_complement::dispatch_disk_complement(0.0, center.re, center.im, *a, region)
            }
            Potential::EllipticGinibre { tau } => {
                eg_complement::dispatch_disk_complement(*tau, center.re, center.im, *a, region)
            }
            _ if center.norm() < crate::model::EPS_GEO => {
                radial::bal_radial_disk_complement(pot, *a)
            }
            _ => Err(unsupported(format!(
                "off-center disk complement is covered only for the elliptic Ginibre family, got {pot:?}"
            ))),
        },
        HoleRegion::Sector { a, p } => sector::dispatch_sector(pot, *a, *p, region),
        HoleRegion::Ellipse { a, c, center, theta0 } => {
            if center.norm() > crate::model::EPS_GEO || theta0.abs() > crate::model::EPS_GEO {
                return Err(unsupported(
                    "ellipse holes are covered only centered at 0 with axes on the coordinate axes",
                ));
            }
            let b = match pot {
                Potential::Ginibre => 1,
                Potential::MittagLeffler { b } => integer_b(*b).ok_or_else(|| {
                    unsupported(format!("ellipse hole needs integer b, got b = {b}"))
                })?,
                _ => {
                    return Err(unsupported(format!(
                        "ellipse holes are covered only for |z|^(2b) potentials, got {pot:?}"
                    )))
                }
            };
            ml_ellipse::dispatch_ellipse(b, *a, *c, region)
        }
        HoleRegion::EllipseComplement { a, c } => match pot {
            Potential::Ginibre => eg_complement::dispatch_ellipse_complement(0.0, *a, *c, region),
            Potential::EllipticGinibre { tau } => {
                eg_complement::dispatch_ellipse_complement(*tau, *a, *c, region)
            }
            _ => Err(unsupported(format!(
                "ellipse complement is covered only for the elliptic Ginibre family, got {pot:?}"
            ))),
        },
        HoleRegion::Rectangle { a1, a2, c1, c2 } => {
            rectangle::dispatch_rectangle(pot, *a1, *a2, *c1, *c2, region)
        }
        HoleRegion::Square { c } => rectangle::dispatch_rectangle(
            pot,
            -c / 2.0,
            c / 2.0,
            -c / 2.0,
            c / 2.0,
            region,
        ),
        HoleRegion::EquilateralTriangle { center, theta0, a } => match pot {
            Potential::Ginibre => triangle::dispatch_triangle(0.0, *center, *theta0, *a, region),
            Potential::EllipticGinibre { tau } => {
                triangle::dispatch_triangle(*tau, *center, *theta0, *a, region)
            }
            _ => Err(unsupported(format!(
                "triangle holes are covered only for the elliptic Ginibre family, got {pot:?}"
            ))),
        },
        HoleRegion::Cardioid { .. } => Err(unsupported(
            "the cardioid has no closed-form swept measure; only its hole constant is available",
        )),
    }
}

/// `Some(b as u32)` when `b` is a positive integer within floating slack.
pub(crate) fn integer_b(b: f64) -> Option<u32> {
    let r = b.round();
    if (b - r).abs() < 1e-9 && r >= 1.0 && r <= u32::MAX as f64 {
        Some(r as u32)
    } else {
        None
    }
}
