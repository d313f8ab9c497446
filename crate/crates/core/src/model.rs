//! Potentials, equilibrium measures, hole regions and geometric validity.
//!
//! A [`Potential`] fixes the external field `Q`, its equilibrium measure `μ`
//! and droplet `S`:
//!
//! | variant | `Q(z)` | `dμ(z)` | `S` |
//! |---------|--------|---------|-----|
//! | `Ginibre` | `\|z\|²` | `d²z/π` | disk of radius 1 |
//! | `EllipticGinibre{τ}` | `(\|z\|²−τ Re z²)/(1−τ²)` | `d²z/(π(1−τ²))` | ellipse semi-axes `1±τ` |
//! | `MittagLeffler{b}` | `\|z\|^{2b}` | `(b²/π)\|z\|^{2b−2} d²z` | disk of radius `b^{−1/(2b)}` |
//! | `Spherical` | `log(1+\|z\|²)` | `d²z/(π(1+\|z\|²)²)` | all of `ℂ` |
//! | `RadialTabulated` | radial `g(r)` | `(1/2)(g″+g′/r) r dr dθ` | union of rings |
//!
//! A [`HoleRegion`] is the set `U` conditioned to be empty.  Its boundary is
//! presented as parametrized [`Chart`]s that the balayage densities and the
//! moment oracles share, so "density per chart parameter" means the same
//! thing everywhere.

use crate::oracle::{self, Domain2D};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::sync::Arc;

/// Margin used by all closed-form containment inequalities.
pub const EPS_GEO: f64 = 1e-12;

/// Errors from model construction, validation and mass quadrature.
#[derive(Debug, Clone)]
pub enum ModelError {
    /// A parameter is outside its admissible range.
    Invalid { what: String },
    /// A mass/quadrature computation failed to meet tolerance.
    Quadrature { what: String },
}

impl std::fmt::Display for ModelError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelError::Invalid { what } => write!(f, "invalid model: {what}"),
            ModelError::Quadrature { what } => write!(f, "quadrature: {what}"),
        }
    }
}

impl std::error::Error for ModelError {}

fn invalid(what: impl Into<String>) -> ModelError {
    ModelError::Invalid { what: what.into() }
}

/// Radial profile of a [`Potential::RadialTabulated`]: the confining function
/// `g` with two derivatives and the rings making up the droplet.
#[derive(Clone)]
pub struct RadialPotential {
    pub g: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub g1: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub g2: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Disjoint rings `[r₀,r₁] ∪ … ∪ [r_{2ℓ}, r_{2ℓ+1}]`, strictly increasing.
    pub rings: Vec<(f64, f64)>,
}

impl std::fmt::Debug for RadialPotential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialPotential").field("rings", &self.rings).finish_non_exhaustive()
    }
}

/// The external field of the gas.
#[derive(Clone, Debug)]
pub enum Potential {
    Ginibre,
    EllipticGinibre { tau: f64 },
    MittagLeffler { b: f64 },
    Spherical,
    RadialTabulated(RadialPotential),
}

impl Potential {
    /// Parameter sanity: `τ ∈ [0,1)`, `b > 0`, rings increasing.
    pub fn check(&self) -> Result<(), ModelError> {
        match self {
            Potential::EllipticGinibre { tau } => {
                if !(0.0..1.0).contains(tau) {
                    return Err(invalid(format!("elliptic Ginibre needs τ ∈ [0,1), got {tau}")));
                }
            }
            Potential::MittagLeffler { b } => {
                if !(*b > 0.0) {
                    return Err(invalid(format!("Mittag-Leffler needs b > 0, got {b}")));
                }
            }
            Potential::RadialTabulated(rp) => {
                if rp.rings.is_empty() {
                    return Err(invalid("radial potential needs at least one ring"));
                }
                let mut prev = -1.0;
                for &(lo, hi) in &rp.rings {
                    if !(lo >= 0.0 && hi > lo && lo > prev) {
                        return Err(invalid("rings must be disjoint and strictly increasing"));
                    }
                    prev = hi;
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// The external field `Q(z)`.
    pub fn q(&self, z: Complex64) -> f64 {
        match self {
            Potential::Ginibre => z.norm_sqr(),
            Potential::EllipticGinibre { tau } => {
                (z.norm_sqr() - tau * (z * z).re) / (1.0 - tau * tau)
            }
            Potential::MittagLeffler { b } => z.norm_sqr().powf(*b),
            Potential::Spherical => z.norm_sqr().ln_1p(),
            Potential::RadialTabulated(rp) => (rp.g)(z.norm()),
        }
    }

    /// Gradient of `Q` as a complex number `∂ₓQ + i ∂_yQ`.
    pub fn grad_q(&self, z: Complex64) -> Complex64 {
        match self {
            Potential::Ginibre => 2.0 * z,
            Potential::EllipticGinibre { tau } => {
                let d = 1.0 - tau * tau;
                Complex64::new(2.0 * z.re * (1.0 - tau) / d, 2.0 * z.im * (1.0 + tau) / d)
            }
            Potential::MittagLeffler { b } => {
                let r2 = z.norm_sqr();
                if r2 == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    2.0 * b * r2.powf(b - 1.0) * z
                }
            }
            Potential::Spherical => 2.0 * z / (1.0 + z.norm_sqr()),
            Potential::RadialTabulated(rp) => {
                let r = z.norm();
                if r == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    (rp.g1)(r) / r * z
                }
            }
        }
    }

    /// Outer radius of the droplet for rotation-invariant potentials
    /// (`∞` for the spherical gas), `None` for the elliptic Ginibre.
    pub fn support_radius(&self) -> Option<f64> {
        match self {
            Potential::Ginibre => Some(1.0),
            Potential::MittagLeffler { b } => Some(b.powf(-1.0 / (2.0 * b))),
            Potential::Spherical => Some(f64::INFINITY),
            Potential::RadialTabulated(rp) => Some(rp.rings.last().unwrap().1),
            Potential::EllipticGinibre { .. } => None,
        }
    }

    /// The radial reduction `dμ_rad(r) = (r/2)(g″(r) + g′(r)/r) dr` of a
    /// rotation-invariant potential, `None` for the elliptic Ginibre.
    pub fn radial_measure(&self) -> Option<RadialMeasure> {
        let (g, g1, g2, rings): (RadialFn, RadialFn, RadialFn, Vec<(f64, f64)>) = match self {
            Potential::Ginibre => (
                Arc::new(|r: f64| r * r),
                Arc::new(|r: f64| 2.0 * r),
                Arc::new(|_| 2.0),
                vec![(0.0, 1.0)],
            ),
            Potential::MittagLeffler { b } => {
                let b = *b;
                (
                    Arc::new(move |r: f64| r.powf(2.0 * b)),
                    Arc::new(move |r: f64| 2.0 * b * r.powf(2.0 * b - 1.0)),
                    Arc::new(move |r: f64| 2.0 * b * (2.0 * b - 1.0) * r.powf(2.0 * b - 2.0)),
                    vec![(0.0, b.powf(-1.0 / (2.0 * b)))],
                )
            }
            Potential::Spherical => (
                Arc::new(|r: f64| (r * r).ln_1p()),
                Arc::new(|r: f64| 2.0 * r / (1.0 + r * r)),
                Arc::new(|r: f64| {
                    let d = 1.0 + r * r;
                    2.0 * (1.0 - r * r) / (d * d)
                }),
                vec![(0.0, f64::INFINITY)],
            ),
            Potential::RadialTabulated(rp) => {
                (rp.g.clone(), rp.g1.clone(), rp.g2.clone(), rp.rings.clone())
            }
            Potential::EllipticGinibre { .. } => return None,
        };
        Some(RadialMeasure {
            g,
            g1,
            g2,
            rings,
            kind: match self {
                Potential::Ginibre => RadialKind::Ginibre,
                Potential::MittagLeffler { b } => RadialKind::MittagLeffler { b: *b },
                Potential::Spherical => RadialKind::Spherical,
                _ => RadialKind::Tabulated,
            },
        })
    }
}

type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq)]
enum RadialKind {
    Ginibre,
    MittagLeffler { b: f64 },
    Spherical,
    Tabulated,
}

/// The radial reduction of a rotation-invariant equilibrium measure:
/// `μ(A) = ∫ 1_A(r e^{iθ}) dμ_rad(r) dθ/(2π)` with
/// `dμ_rad(r) = (r/2)(g″(r) + g′(r)/r) dr` on the rings.
#[derive(Clone)]
pub struct RadialMeasure {
    g: RadialFn,
    g1: RadialFn,
    g2: RadialFn,
    rings: Vec<(f64, f64)>,
    kind: RadialKind,
}

impl RadialMeasure {
    pub fn g(&self, r: f64) -> f64 {
        (self.g)(r)
    }

    pub fn g1(&self, r: f64) -> f64 {
        (self.g1)(r)
    }

    pub fn g2(&self, r: f64) -> f64 {
        (self.g2)(r)
    }

    pub fn rings(&self) -> &[(f64, f64)] {
        &self.rings
    }

    /// Density of `μ_rad` with respect to `dr`; zero off the rings.
    pub fn density(&self, r: f64) -> f64 {
        if !self.in_rings(r) || r <= 0.0 {
            return 0.0;
        }
        0.5 * r * (self.g2(r) + self.g1(r) / r)
    }

    pub fn in_rings(&self, r: f64) -> bool {
        self.rings.iter().any(|&(lo, hi)| r >= lo - EPS_GEO && r <= hi + EPS_GEO)
    }

    /// Integral `∫ f(r) dμ_rad(r)` over `[lo, hi]` intersected with the rings.
    ///
    /// The spherical gas substitutes `t = r²/(1+r²)` (under which
    /// `dμ_rad = dt` exactly), turning the improper integral into a finite
    /// one.
    pub fn integrate(
        &self,
        lo: f64,
        hi: f64,
        f: impl Fn(f64) -> f64,
        tol: f64,
    ) -> Result<f64, ModelError> {
        let mut total = 0.0;
        for &(r0, r1) in &self.rings {
            let a = lo.max(r0);
            let b = hi.min(r1);
            if b <= a {
                continue;
            }
            let piece = if self.kind == RadialKind::Spherical {
                let (ta, tb) = (a * a / (1.0 + a * a), if b.is_infinite() { 1.0 } else { b * b / (1.0 + b * b) });
                oracle::quad1d(|t| f((t / (1.0 - t)).sqrt()), ta, tb, tol)
            } else {
                oracle::quad1d(|r| f(r) * self.density(r), a, b, tol)
            };
            match piece {
                Ok(r) => total += r.value,
                Err(e) => {
                    return Err(ModelError::Quadrature { what: format!("radial integral: {e}") })
                }
            }
        }
        Ok(total)
    }

    /// `∫_{lo}^{hi} r^s dμ_rad(r)` with closed forms for the built-in kinds.
    pub fn power_moment(&self, lo: f64, hi: f64, s: f64) -> f64 {
        match self.kind {
            RadialKind::Ginibre => {
                let prim = |r: f64| 2.0 * r.powf(s + 2.0) / (s + 2.0);
                prim(hi.clamp(0.0, 1.0)) - prim(lo.clamp(0.0, 1.0))
            }
            RadialKind::MittagLeffler { b } => {
                let rmax = b.powf(-1.0 / (2.0 * b));
                let prim = |r: f64| 2.0 * b * b * r.powf(s + 2.0 * b) / (s + 2.0 * b);
                prim(hi.clamp(0.0, rmax)) - prim(lo.clamp(0.0, rmax))
            }
            _ => self
                .integrate(lo, hi, |r| r.powf(s), 1e-12)
                .expect("power moment quadrature"),
        }
    }

    /// `∫_{lo}^{hi} log r dμ_rad(r)` with closed forms for the built-ins.
    pub fn log_moment(&self, lo: f64, hi: f64) -> f64 {
        match self.kind {
            RadialKind::Ginibre => {
                let prim = |r: f64| r * r * r.ln() - r * r / 2.0;
                prim(hi.clamp(f64::MIN_POSITIVE, 1.0)) - prim(lo.clamp(f64::MIN_POSITIVE, 1.0))
            }
            RadialKind::MittagLeffler { b } => {
                let rmax = b.powf(-1.0 / (2.0 * b));
                let prim = |r: f64| b * r.powf(2.0 * b) * r.ln() - r.powf(2.0 * b) / 2.0;
                prim(hi.clamp(f64::MIN_POSITIVE, rmax)) - prim(lo.clamp(f64::MIN_POSITIVE, rmax))
            }
            RadialKind::Spherical => {
                let prim = |r: f64| {
                    let r2 = r * r;
                    if r.is_infinite() {
                        // limit of r² ln r/(1+r²) − ln(1+r²)/2 − (ln r − ln r) … → 0
                        // computed as lim (r²/(1+r²) − 1) ln r − ln(1+r²)/2 + ln r
                        0.0
                    } else {
                        r2 * r.ln() / (1.0 + r2) - 0.5 * (1.0 + r2).ln()
                    }
                };
                prim(hi.max(f64::MIN_POSITIVE)) - prim(lo.max(f64::MIN_POSITIVE))
            }
            RadialKind::Tabulated => self
                .integrate(lo, hi, |r| r.ln(), 1e-12)
                .expect("log moment quadrature"),
        }
    }

    /// Cumulative mass `μ_rad([0, r])`.
    pub fn cumulative(&self, r: f64) -> f64 {
        match self.kind {
            RadialKind::Spherical => r * r / (1.0 + r * r),
            _ => self.power_moment(0.0, r, 0.0),
        }
    }

    /// Total mass over all rings (should be 1 for a probability measure).
    pub fn total_mass(&self) -> f64 {
        match self.kind {
            RadialKind::Spherical => 1.0,
            _ => {
                let last = self.rings.last().unwrap().1;
                self.power_moment(0.0, last, 0.0)
            }
        }
    }
}

/// Density of the equilibrium measure `μ` with respect to planar Lebesgue
/// measure `d²z`; zero outside the droplet (the spherical gas never
/// vanishes).
pub fn equilibrium_density(pot: &Potential, z: Complex64) -> f64 {
    match pot {
        Potential::Ginibre => {
            if z.norm_sqr() <= 1.0 + EPS_GEO {
                1.0 / PI
            } else {
                0.0
            }
        }
        Potential::EllipticGinibre { tau } => {
            let (x, y) = (z.re / (1.0 + tau), z.im / (1.0 - tau));
            if x * x + y * y <= 1.0 + EPS_GEO {
                1.0 / (PI * (1.0 - tau * tau))
            } else {
                0.0
            }
        }
        Potential::MittagLeffler { b } => {
            if z.norm() <= b.powf(-1.0 / (2.0 * b)) + EPS_GEO {
                b * b / PI * z.norm_sqr().powf(b - 1.0)
            } else {
                0.0
            }
        }
        Potential::Spherical => {
            let d = 1.0 + z.norm_sqr();
            1.0 / (PI * d * d)
        }
        Potential::RadialTabulated(_) => {
            // Planar density of dμ_rad(r) dθ/(2π) is μ_rad-density(r)/(2πr);
            // at the origin this tends to g″(0)/(2π).
            let rad = pot.radial_measure().unwrap();
            let r = z.norm();
            if r < 1e-8 {
                if rad.in_rings(0.0) {
                    rad.g2(1e-8) / TAU
                } else {
                    0.0
                }
            } else {
                rad.density(r) / (TAU * r)
            }
        }
    }
}

/// One parametrized piece of a hole boundary.
///
/// `point` maps the chart parameter to the plane; `speed` is `|z′(t)|`, so
/// arclength integrals read `∫ f(z(t)) speed(t) dt`.
#[derive(Clone)]
pub struct Chart {
    pub id: &'static str,
    pub t0: f64,
    pub t1: f64,
    point: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
    speed: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl Chart {
    fn new(
        id: &'static str,
        t0: f64,
        t1: f64,
        point: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        speed: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Chart { id, t0, t1, point: Arc::new(point), speed: Arc::new(speed) }
    }

    pub fn point(&self, t: f64) -> Complex64 {
        (self.point)(t)
    }

    pub fn speed(&self, t: f64) -> f64 {
        (self.speed)(t)
    }
}

impl std::fmt::Debug for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Chart")
            .field("id", &self.id)
            .field("range", &(self.t0, self.t1))
            .finish_non_exhaustive()
    }
}

/// The conditioned-to-be-empty region `U`.
///
/// Angles are radians; every length is in droplet units.  `Sector` opens
/// from the positive real axis over the angle `2π/p` and reaches from the
/// origin to radius `a`; for `p = 1` its boundary is the three-chart slit
/// boundary (both sides of the segment `(0, a)` plus the full circle).
#[derive(Clone, Debug)]
pub enum HoleRegion {
    Disk { center: Complex64, a: f64 },
    Annulus { rho1: f64, rho2: f64 },
    DiskComplement { center: Complex64, a: f64 },
    Sector { a: f64, p: f64 },
    Ellipse { a: f64, c: f64, center: Complex64, theta0: f64 },
    EllipseComplement { a: f64, c: f64 },
    Rectangle { a1: f64, a2: f64, c1: f64, c2: f64 },
    Square { c: f64 },
    EquilateralTriangle { center: Complex64, theta0: f64, a: f64 },
    Cardioid { a: f64, c: f64, center: Complex64, theta0: f64 },
}

impl HoleRegion {
    /// Parameter sanity for the region itself (independent of any droplet).
    pub fn check(&self) -> Result<(), ModelError> {
        let ok = match self {
            HoleRegion::Disk { a, .. } | HoleRegion::DiskComplement { a, .. } => *a > 0.0,
            HoleRegion::Annulus { rho1, rho2 } => 0.0 < *rho1 && rho1 < rho2,
            HoleRegion::Sector { a, p } => *a > 0.0 && *p >= 1.0,
            HoleRegion::Ellipse { a, c, .. } | HoleRegion::EllipseComplement { a, c } => {
                *a > 0.0 && *c > 0.0
            }
            HoleRegion::Rectangle { a1, a2, c1, c2 } => a1 < a2 && c1 < c2,
            HoleRegion::Square { c } => *c > 0.0,
            HoleRegion::EquilateralTriangle { a, .. } => *a > 0.0,
            HoleRegion::Cardioid { a, c, .. } => *a > 0.0 && (0.0..0.5).contains(c),
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("region parameters out of range: {self:?}")))
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, HoleRegion::DiskComplement { .. } | HoleRegion::EllipseComplement { .. })
    }

    /// Planar area of a bounded region (`None` for complements).
    pub fn area(&self) -> Option<f64> {
        Some(match self {
            HoleRegion::Disk { a, .. } => PI * a * a,
            HoleRegion::Annulus { rho1, rho2 } => PI * (rho2 * rho2 - rho1 * rho1),
            HoleRegion::Sector { a, p } => PI * a * a / p,
            HoleRegion::Ellipse { a, c, .. } => PI * a * c,
            HoleRegion::Rectangle { a1, a2, c1, c2 } => (a2 - a1) * (c2 - c1),
            HoleRegion::Square { c } => c * c,
            HoleRegion::EquilateralTriangle { a, .. } => 3.0 * 3.0f64.sqrt() / 4.0 * a * a,
            HoleRegion::Cardioid { a, c, .. } => PI * a * a * (1.0 + 2.0 * c * c),
            _ => return None,
        })
    }

    /// Perimeter where a closed form exists (disk, rectangle, square,
    /// triangle) — used as a chart-tiling invariant.
    pub fn perimeter(&self) -> Option<f64> {
        Some(match self {
            HoleRegion::Disk { a, .. } | HoleRegion::DiskComplement { a, .. } => TAU * a,
            HoleRegion::Annulus { rho1, rho2 } => TAU * (rho1 + rho2),
            HoleRegion::Rectangle { a1, a2, c1, c2 } => 2.0 * ((a2 - a1) + (c2 - c1)),
            HoleRegion::Square { c } => 4.0 * c,
            HoleRegion::EquilateralTriangle { a, .. } => 3.0 * 3.0f64.sqrt() * a,
            _ => return None,
        })
    }

    /// Boundary charts tiling `∂U` (for `Sector` with `p = 1`, the slit is
    /// carried by two same-image charts, one per side, each carrying its own
    /// copy of the density).
    pub fn charts(&self) -> Vec<Chart> {
        match self {
            HoleRegion::Disk { center, a } | HoleRegion::DiskComplement { center, a } => {
                let (z0, a) = (*center, *a);
                vec![Chart::new(
                    "circle",
                    0.0,
                    TAU,
                    move |t| z0 + a * Complex64::from_polar(1.0, t),
                    move |_| a,
                )]
            }
            HoleRegion::Annulus { rho1, rho2 } => {
                let (r1, r2) = (*rho1, *rho2);
                vec![
                    Chart::new("inner", 0.0, TAU, move |t| Complex64::from_polar(r1, t), move |_| r1),
                    Chart::new("outer", 0.0, TAU, move |t| Complex64::from_polar(r2, t), move |_| r2),
                ]
            }
            HoleRegion::Sector { a, p } => {
                let (a, p) = (*a, *p);
                let rot = Complex64::from_polar(1.0, TAU / p);
                if (p - 1.0).abs() < EPS_GEO {
                    vec![
                        Chart::new("edge+", 0.0, a, |r| Complex64::new(r, 0.0), |_| 1.0),
                        Chart::new("arc", 0.0, TAU, move |t| Complex64::from_polar(a, t), move |_| a),
                        Chart::new("edge-", 0.0, a, |r| Complex64::new(r, -0.0), |_| 1.0),
                    ]
                } else {
                    vec![
                        Chart::new("edge0", 0.0, a, |r| Complex64::new(r, 0.0), |_| 1.0),
                        Chart::new(
                            "arc",
                            0.0,
                            TAU / p,
                            move |t| Complex64::from_polar(a, t),
                            move |_| a,
                        ),
                        Chart::new("edge1", 0.0, a, move |r| r * rot, |_| 1.0),
                    ]
                }
            }
            HoleRegion::Ellipse { a, c, center, theta0 } => {
                let (a, c, z0) = (*a, *c, *center);
                let rot = Complex64::from_polar(1.0, *theta0);
                vec![Chart::new(
                    "ellipse",
                    0.0,
                    TAU,
                    move |t| z0 + rot * Complex64::new(a * t.cos(), c * t.sin()),
                    move |t| {
                        let (s, co) = t.sin_cos();
                        (a * a * s * s + c * c * co * co).sqrt()
                    },
                )]
            }
            HoleRegion::EllipseComplement { a, c } => {
                let (a, c) = (*a, *c);
                vec![Chart::new(
                    "ellipse",
                    0.0,
                    TAU,
                    move |t| Complex64::new(a * t.cos(), c * t.sin()),
                    move |t| {
                        let (s, co) = t.sin_cos();
                        (a * a * s * s + c * c * co * co).sqrt()
                    },
                )]
            }
            HoleRegion::Rectangle { a1, a2, c1, c2 } => {
                let (a1, a2, c1, c2) = (*a1, *a2, *c1, *c2);
                vec![
                    Chart::new("right", c1, c2, move |y| Complex64::new(a2, y), |_| 1.0),
                    Chart::new("top", a1, a2, move |x| Complex64::new(x, c2), |_| 1.0),
                    Chart::new("left", c1, c2, move |y| Complex64::new(a1, y), |_| 1.0),
                    Chart::new("bottom", a1, a2, move |x| Complex64::new(x, c1), |_| 1.0),
                ]
            }
            HoleRegion::Square { c } => {
                HoleRegion::Rectangle { a1: -c / 2.0, a2: c / 2.0, c1: -c / 2.0, c2: c / 2.0 }
                    .charts()
            }
            HoleRegion::EquilateralTriangle { center, theta0, a } => {
                let h = 3.0f64.sqrt() / 2.0 * a;
                let ids = ["edge0", "edge1", "edge2"];
                (0..3)
                    .map(|j| {
                        let frame = Complex64::from_polar(1.0, *theta0 + TAU * j as f64 / 3.0);
                        let z0 = *center;
                        let half_a = a / 2.0;
                        Chart::new(
                            ids[j],
                            -h,
                            h,
                            move |y| z0 + frame * Complex64::new(half_a, y),
                            |_| 1.0,
                        )
                    })
                    .collect()
            }
            HoleRegion::Cardioid { a, c, center, theta0 } => {
                let (a, c, z0) = (*a, *c, *center);
                let rot = Complex64::from_polar(1.0, *theta0);
                vec![Chart::new(
                    "cardioid",
                    0.0,
                    TAU,
                    move |t| z0 + rot * (a * (1.0 + 2.0 * c * t.cos())) * Complex64::from_polar(1.0, t),
                    move |t| {
                        let r = a * (1.0 + 2.0 * c * t.cos());
                        let dr = -2.0 * a * c * t.sin();
                        (r * r + dr * dr).sqrt()
                    },
                )]
            }
        }
    }

    /// Open-set membership test for `U` itself (complement regions are the
    /// unbounded sets).
    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            HoleRegion::Disk { center, a } => (z - center).norm() < *a,
            HoleRegion::Annulus { rho1, rho2 } => {
                let r = z.norm();
                *rho1 < r && r < *rho2
            }
            HoleRegion::DiskComplement { center, a } => (z - center).norm() > *a,
            HoleRegion::Sector { a, p } => {
                let r = z.norm();
                if r == 0.0 || r >= *a {
                    return false;
                }
                let mut t = z.arg();
                if t < 0.0 {
                    t += TAU;
                }
                t > 0.0 && t < TAU / p
            }
            HoleRegion::Ellipse { a, c, center, theta0 } => {
                let w = (z - center) * Complex64::from_polar(1.0, -theta0);
                (w.re / a).powi(2) + (w.im / c).powi(2) < 1.0
            }
            HoleRegion::EllipseComplement { a, c } => {
                (z.re / a).powi(2) + (z.im / c).powi(2) > 1.0
            }
            HoleRegion::Rectangle { a1, a2, c1, c2 } => {
                z.re > *a1 && z.re < *a2 && z.im > *c1 && z.im < *c2
            }
            HoleRegion::Square { c } => z.re.abs() < c / 2.0 && z.im.abs() < c / 2.0,
            HoleRegion::EquilateralTriangle { center, theta0, a } => {
                let w = (z - center) * Complex64::from_polar(1.0, -theta0);
                (0..3).all(|j| {
                    let e = w * Complex64::from_polar(1.0, -TAU * j as f64 / 3.0);
                    e.re < a / 2.0
                })
            }
            HoleRegion::Cardioid { a, c, center, theta0 } => {
                let w = (z - center) * Complex64::from_polar(1.0, -theta0);
                let r = w.norm();
                r < a * (1.0 + 2.0 * c * w.arg().cos())
            }
        }
    }

    /// Nearest point of `∂U` to `z` (used to project gas points out of the
    /// hole).  Ties at corners resolve toward the smaller chart parameter.
    pub fn project_to_boundary(&self, z: Complex64) -> Complex64 {
        match self {
            HoleRegion::Disk { center, a } | HoleRegion::DiskComplement { center, a } => {
                let d = z - center;
                if d.norm() == 0.0 {
                    center + Complex64::new(*a, 0.0)
                } else {
                    center + d / d.norm() * *a
                }
            }
            HoleRegion::Annulus { rho1, rho2 } => {
                let r = z.norm();
                if r == 0.0 {
                    return Complex64::new(*rho1, 0.0);
                }
                let target = if (r - rho1).abs() <= (rho2 - r).abs() { *rho1 } else { *rho2 };
                z / r * target
            }
            HoleRegion::Sector { a, p } => {
                let opening = TAU / p;
                let candidates = [
                    project_to_segment(z, Complex64::new(0.0, 0.0), Complex64::new(*a, 0.0)),
                    {
                        let rot = Complex64::from_polar(1.0, opening);
                        project_to_segment(z, Complex64::new(0.0, 0.0), *a * rot)
                    },
                    {
                        let r = z.norm();
                        if r == 0.0 {
                            Complex64::new(*a, 0.0)
                        } else {
                            let mut t = z.arg();
                            if t < 0.0 {
                                t += TAU;
                            }
                            Complex64::from_polar(*a, t.clamp(0.0, opening))
                        }
                    },
                ];
                nearest_of(z, &candidates)
            }
            HoleRegion::Ellipse { a, c, center, theta0 } => {
                let rot = Complex64::from_polar(1.0, *theta0);
                let w = (z - center) * rot.conj();
                center + rot * project_to_axis_ellipse(w, *a, *c)
            }
            HoleRegion::EllipseComplement { a, c } => project_to_axis_ellipse(z, *a, *c),
            HoleRegion::Rectangle { a1, a2, c1, c2 } => {
                project_to_rect_boundary(z, *a1, *a2, *c1, *c2)
            }
            HoleRegion::Square { c } => {
                project_to_rect_boundary(z, -c / 2.0, c / 2.0, -c / 2.0, c / 2.0)
            }
            HoleRegion::EquilateralTriangle { center, theta0, a } => {
                let h = 3.0f64.sqrt() / 2.0 * a;
                let mut best = None;
                for j in 0..3 {
                    let frame = Complex64::from_polar(1.0, *theta0 + TAU * j as f64 / 3.0);
                    let p0 = center + frame * Complex64::new(a / 2.0, -h);
                    let p1 = center + frame * Complex64::new(a / 2.0, h);
                    let cand = project_to_segment(z, p0, p1);
                    let d = (z - cand).norm();
                    if best.map_or(true, |(bd, _)| d < bd - EPS_GEO) {
                        best = Some((d, cand));
                    }
                }
                best.unwrap().1
            }
            HoleRegion::Cardioid { a, c, center, theta0 } => {
                let rot = Complex64::from_polar(1.0, *theta0);
                let w = (z - center) * rot.conj();
                let curve = |t: f64| {
                    let r = a * (1.0 + 2.0 * c * t.cos());
                    Complex64::from_polar(r, t)
                };
                let t = minimize_1d(|t| (curve(t) - w).norm_sqr(), -PI, PI, 512);
                center + rot * curve(t)
            }
        }
    }
}

fn project_to_segment(z: Complex64, p0: Complex64, p1: Complex64) -> Complex64 {
    let d = p1 - p0;
    let t = ((z - p0).re * d.re + (z - p0).im * d.im) / d.norm_sqr();
    p0 + d * t.clamp(0.0, 1.0)
}

fn nearest_of(z: Complex64, candidates: &[Complex64]) -> Complex64 {
    let mut best = candidates[0];
    for &c in &candidates[1..] {
        if (z - c).norm() < (z - best).norm() - EPS_GEO {
            best = c;
        }
    }
    best
}

fn project_to_rect_boundary(z: Complex64, a1: f64, a2: f64, c1: f64, c2: f64) -> Complex64 {
    let inside = z.re > a1 && z.re < a2 && z.im > c1 && z.im < c2;
    if !inside {
        // Clamp into the closed rectangle, then fall through to the boundary
        // if the clamp landed interior (it cannot).
        return Complex64::new(z.re.clamp(a1, a2), z.im.clamp(c1, c2));
    }
    // Interior point: push through the nearest side, smaller-parameter side
    // first on ties.
    let dists = [(z.im - c1).abs(), (z.re - a1).abs(), (c2 - z.im).abs(), (a2 - z.re).abs()];
    let mut k = 0;
    for j in 1..4 {
        if dists[j] < dists[k] - EPS_GEO {
            k = j;
        }
    }
    match k {
        0 => Complex64::new(z.re, c1),
        1 => Complex64::new(a1, z.im),
        2 => Complex64::new(z.re, c2),
        _ => Complex64::new(a2, z.im),
    }
}

/// Nearest point on the axis-aligned centered ellipse `x²/a² + y²/c² = 1`.
fn project_to_axis_ellipse(w: Complex64, a: f64, c: f64) -> Complex64 {
    let (x, y) = (w.re.abs(), w.im.abs());
    if x == 0.0 && y == 0.0 {
        // Centre: the closest boundary point lies on the shorter semi-axis.
        return if a <= c { Complex64::new(a, 0.0) } else { Complex64::new(0.0, c) };
    }
    // Stationarity: F(t) = (a cos t − x)(−a sin t) + (c sin t − y)(c cos t)
    // has a root in [0, π/2] with F(0) ≤ 0 ≤ F(π/2); bisect.
    let f = |t: f64| {
        let (s, co) = t.sin_cos();
        (a * co - x) * (-a * s) + (c * s - y) * (c * co)
    };
    let (mut lo, mut hi) = (0.0f64, PI / 2.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    Complex64::new(a * t.cos() * w.re.signum(), c * t.sin() * w.im.signum())
}

/// Deterministic grid + golden-section 1D minimizer on `[lo, hi]`.
fn minimize_1d(f: impl Fn(f64) -> f64, lo: f64, hi: f64, grid: usize) -> f64 {
    let mut best_t = lo;
    let mut best_v = f(lo);
    for k in 1..=grid {
        let t = lo + (hi - lo) * k as f64 / grid as f64;
        let v = f(t);
        if v < best_v {
            best_v = v;
            best_t = t;
        }
    }
    let h = (hi - lo) / grid as f64;
    let (mut a, mut b) = ((best_t - h).max(lo), (best_t + h).min(hi));
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut c1, mut c2) = (b - phi * (b - a), a + phi * (b - a));
    let (mut f1, mut f2) = (f(c1), f(c2));
    for _ in 0..64 {
        if f1 < f2 {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - phi * (b - a);
            f1 = f(c1);
        } else {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + phi * (b - a);
            f2 = f(c2);
        }
    }
    0.5 * (a + b)
}

/// Deterministic grid + golden-section 1D maximizer on `[lo, hi]`.
fn maximize_1d(f: impl Fn(f64) -> f64, lo: f64, hi: f64, grid: usize) -> f64 {
    let t = minimize_1d(|t| -f(t), lo, hi, grid);
    f(t)
}

/// Geometric validity of a (potential, region) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Validity {
    /// `∂U ⊂ S` — the condition the constants module insists on.
    pub boundary_in_support: bool,
    /// `U ⊂ S` for bounded `U`; for complements, the *removed* set lies in `S`.
    pub hole_in_support: bool,
    /// Exterior-ball condition of `∂U` (fails only for sector opening `> π`).
    pub exterior_ball: bool,
}

/// Largest value of `h` over `∂U` (charts sampled then refined; `h` is
/// convex in all uses, so the boundary maximum is the regionwide maximum).
fn max_over_boundary(region: &HoleRegion, h: impl Fn(Complex64) -> f64 + Copy) -> f64 {
    region
        .charts()
        .iter()
        .map(|ch| maximize_1d(|t| h(ch.point(t)), ch.t0, ch.t1, 256))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Checks `∂U ⊂ S`, `U ⊂ S` (resp. hole complement for unbounded `U`) and
/// the exterior-ball condition.
pub fn validate(pot: &Potential, region: &HoleRegion) -> Validity {
    // Normalized droplet gauge: h(z) ≤ 1 ⟺ z ∈ S (radial kinds use |z|/R).
    let in_support: Box<dyn Fn(Complex64) -> f64> = match pot {
        Potential::EllipticGinibre { tau } => {
            let (a_s, c_s) = (1.0 + tau, 1.0 - tau);
            Box::new(move |z: Complex64| (z.re / a_s).powi(2) + (z.im / c_s).powi(2))
        }
        Potential::Spherical => Box::new(|_| 0.0),
        _ => {
            let r = pot.support_radius().unwrap_or(1.0);
            Box::new(move |z: Complex64| z.norm() / r)
        }
    };
    let boundary_max = max_over_boundary(region, &in_support);
    let mut boundary_in_support = boundary_max <= 1.0 + EPS_GEO;
    let mut hole_in_support = boundary_in_support; // convex gauges: boundary max bounds U
    if let Potential::RadialTabulated(_) = pot {
        // Multi-ring droplets: the radii actually carrying balayage charge
        // must live inside rings.
        let rad = pot.radial_measure().unwrap();
        let radius_ok = |r: f64| rad.in_rings(r);
        let ok = match region {
            HoleRegion::Disk { center, a } if center.norm() < EPS_GEO => radius_ok(*a),
            HoleRegion::Annulus { rho1, rho2 } => radius_ok(*rho1) && radius_ok(*rho2),
            HoleRegion::DiskComplement { center, a } if center.norm() < EPS_GEO => radius_ok(*a),
            HoleRegion::Sector { a, .. } => radius_ok(*a),
            _ => boundary_in_support,
        };
        boundary_in_support = ok;
        hole_in_support = ok && boundary_max <= 1.0 + EPS_GEO;
    }
    if let HoleRegion::DiskComplement { .. } | HoleRegion::EllipseComplement { .. } = region {
        // For complements the "hole" flag refers to the removed compact set.
        hole_in_support = boundary_in_support;
    }
    let exterior_ball = match region {
        HoleRegion::Sector { p, .. } => *p >= 2.0,
        HoleRegion::Cardioid { c, .. } => *c < 0.5,
        _ => true,
    };
    Validity { boundary_in_support, hole_in_support, exterior_ball }
}

/// Mass `μ(U)` of the hole, by closed form where cheap and by adaptive
/// quadrature otherwise; relative tolerance `1e−10`.
pub fn mu_mass_of_region(pot: &Potential, region: &HoleRegion) -> Result<f64, ModelError> {
    const TOL: f64 = 1e-10;
    // Unbounded holes: total mass 1 minus the removed compact piece.
    match region {
        HoleRegion::DiskComplement { center, a } => {
            let inner = HoleRegion::Disk { center: *center, a: *a };
            return Ok(1.0 - mu_mass_of_region(pot, &inner)?);
        }
        HoleRegion::EllipseComplement { a, c } => {
            let inner = HoleRegion::Ellipse {
                a: *a,
                c: *c,
                center: Complex64::new(0.0, 0.0),
                theta0: 0.0,
            };
            return Ok(1.0 - mu_mass_of_region(pot, &inner)?);
        }
        _ => {}
    }

    // Flat-density droplets: mass is area(U ∩ S)/[π(1−τ²)]; when U ⊂ S this
    // is a closed form.
    if let Potential::Ginibre | Potential::EllipticGinibre { .. } = pot {
        let tau = if let Potential::EllipticGinibre { tau } = pot { *tau } else { 0.0 };
        if validate(pot, region).hole_in_support {
            if let Some(area) = region.area() {
                return Ok(area / (PI * (1.0 - tau * tau)));
            }
        }
    }

    // Rotation-invariant closed forms for centered radial shapes.
    if let Some(rad) = pot.radial_measure() {
        match region {
            HoleRegion::Disk { center, a } if center.norm() < EPS_GEO => {
                return Ok(rad.cumulative(*a));
            }
            HoleRegion::Annulus { rho1, rho2 } => {
                return Ok(rad.cumulative(*rho2) - rad.cumulative(*rho1));
            }
            HoleRegion::Sector { a, p } => {
                return Ok(rad.cumulative(*a) / p);
            }
            _ => {}
        }
    }

    // General bounded region: 2D quadrature of the equilibrium density.
    integrate_mu_over_region(pot, region, |_| 1.0, TOL)
}

/// `∫_U f(z) dμ(z)` over a *bounded* hole by adaptive 2D quadrature of
/// `f · (equilibrium density)`, sharing one domain decomposition per shape.
///
/// Complement regions are rejected: integrate the removed compact piece and
/// subtract from the full-plane value instead.
pub fn integrate_mu_over_region(
    pot: &Potential,
    region: &HoleRegion,
    f: impl Fn(Complex64) -> f64 + Copy,
    tol: f64,
) -> Result<f64, ModelError> {
    let g = |z: Complex64| f(z) * equilibrium_density(pot, z);
    let run = |d: &Domain2D| {
        oracle::quad2d(g, d, tol)
            .map(|r| r.value)
            .map_err(|e| ModelError::Quadrature { what: format!("∫ dμ over {region:?}: {e}") })
    };
    match region {
        HoleRegion::Disk { center, a } => {
            let (z0, a) = (*center, *a);
            run(&Domain2D::Polar {
                center: z0,
                theta0: 0.0,
                theta1: TAU,
                r_in: &|_| 0.0,
                r_out: &|_| a,
            })
        }
        HoleRegion::Ellipse { a, c, center, theta0 } => {
            let (a, c) = (*a, *c);
            let r_out = move |t: f64| {
                let (s, co) = t.sin_cos();
                a * c / ((c * co).powi(2) + (a * s).powi(2)).sqrt()
            };
            run(&Domain2D::Polar {
                center: *center,
                theta0: *theta0,
                theta1: *theta0 + TAU,
                r_in: &|_| 0.0,
                r_out: &move |t| r_out(t - theta0),
            })
        }
        HoleRegion::Rectangle { a1, a2, c1, c2 } => {
            run(&Domain2D::Rect { x0: *a1, x1: *a2, y0: *c1, y1: *c2 })
        }
        HoleRegion::Square { c } => run(&Domain2D::Rect {
            x0: -c / 2.0,
            x1: c / 2.0,
            y0: -c / 2.0,
            y1: c / 2.0,
        }),
        HoleRegion::EquilateralTriangle { center, theta0, a } => {
            let (z0, th, a) = (*center, *theta0, *a);
            let frame = Complex64::from_polar(1.0, th);
            let moved = move |z: Complex64| g(z0 + frame * z);
            let s3 = 3.0f64.sqrt();
            oracle::quad2d(
                moved,
                &Domain2D::XStrip {
                    x0: -a,
                    x1: a / 2.0,
                    ylo: &move |x| -(x + a) / s3,
                    yhi: &move |x| (x + a) / s3,
                },
                tol,
            )
            .map(|r| r.value)
            .map_err(|e| ModelError::Quadrature { what: format!("∫ dμ over triangle: {e}") })
        }
        HoleRegion::Cardioid { a, c, center, theta0 } => {
            let (a, c) = (*a, *c);
            let r_out = move |t: f64| a * (1.0 + 2.0 * c * t.cos());
            run(&Domain2D::Polar {
                center: *center,
                theta0: *theta0,
                theta1: *theta0 + TAU,
                r_in: &|_| 0.0,
                r_out: &move |t| r_out(t - theta0),
            })
        }
        HoleRegion::Sector { a, p } => {
            let a = *a;
            run(&Domain2D::Polar {
                center: Complex64::new(0.0, 0.0),
                theta0: 0.0,
                theta1: TAU / p,
                r_in: &|_| 0.0,
                r_out: &move |_| a,
            })
        }
        HoleRegion::Annulus { rho1, rho2 } => {
            let (r1, r2) = (*rho1, *rho2);
            run(&Domain2D::Polar {
                center: Complex64::new(0.0, 0.0),
                theta0: 0.0,
                theta1: TAU,
                r_in: &move |_| r1,
                r_out: &move |_| r2,
            })
        }
        HoleRegion::DiskComplement { .. } | HoleRegion::EllipseComplement { .. } => {
            Err(ModelError::Invalid {
                what: "unbounded region: integrate the removed compact set and subtract".into(),
            })
        }
    }
}

/// JSON-facing potential description (mirrors [`Potential`] minus the
/// callback-bearing tabulated variant, which has no serial form).
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    Ginibre,
    EllipticGinibre { tau: f64 },
    MittagLeffler { b: f64 },
    Spherical,
}

impl PotentialSpec {
    pub fn build(&self) -> Result<Potential, ModelError> {
        let pot = match self {
            PotentialSpec::Ginibre => Potential::Ginibre,
            PotentialSpec::EllipticGinibre { tau } => Potential::EllipticGinibre { tau: *tau },
            PotentialSpec::MittagLeffler { b } => Potential::MittagLeffler { b: *b },
            PotentialSpec::Spherical => Potential::Spherical,
        };
        pot.check()?;
        Ok(pot)
    }
}

/// JSON-facing region description; `x0`/`y0` are the center, `theta0` the
/// rotation in radians.  Unknown fields are rejected at parse time.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RegionSpec {
    Disk {
        #[serde(default)]
        x0: f64,
        #[serde(default)]
        y0: f64,
        a: f64,
    },
    Annulus {
        rho1: f64,
        rho2: f64,
    },
    DiskComplement {
        #[serde(default)]
        x0: f64,
        #[serde(default)]
        y0: f64,
        a: f64,
    },
    Sector {
        a: f64,
        p: f64,
    },
    Ellipse {
        a: f64,
        c: f64,
        #[serde(default)]
        x0: f64,
        #[serde(default)]
        y0: f64,
        #[serde(default)]
        theta0: f64,
    },
    EllipseComplement {
        a: f64,
        c: f64,
    },
    Rectangle {
        a1: f64,
        a2: f64,
        c1: f64,
        c2: f64,
    },
    Square {
        c: f64,
    },
    Triangle {
        #[serde(default)]
        x0: f64,
        #[serde(default)]
        y0: f64,
        #[serde(default)]
        theta0: f64,
        a: f64,
    },
    Cardioid {
        a: f64,
        c: f64,
        #[serde(default)]
        x0: f64,
        #[serde(default)]
        y0: f64,
        #[serde(default)]
        theta0: f64,
    },
}

impl RegionSpec {
    pub fn build(&self) -> Result<HoleRegion, ModelError> {
        let region = match *self {
            RegionSpec::Disk { x0, y0, a } => {
                HoleRegion::Disk { center: Complex64::new(x0, y0), a }
            }
            RegionSpec::Annulus { rho1, rho2 } => HoleRegion::Annulus { rho1, rho2 },
            RegionSpec::DiskComplement { x0, y0, a } => {
                HoleRegion::DiskComplement { center: Complex64::new(x0, y0), a }
            }
            RegionSpec::Sector { a, p } => HoleRegion::Sector { a, p },
            RegionSpec::Ellipse { a, c, x0, y0, theta0 } => {
                HoleRegion::Ellipse { a, c, center: Complex64::new(x0, y0), theta0 }
            }
            RegionSpec::EllipseComplement { a, c } => HoleRegion::EllipseComplement { a, c },
            RegionSpec::Rectangle { a1, a2, c1, c2 } => HoleRegion::Rectangle { a1, a2, c1, c2 },
            RegionSpec::Square { c } => HoleRegion::Square { c },
            RegionSpec::Triangle { x0, y0, theta0, a } => {
                HoleRegion::EquilateralTriangle { center: Complex64::new(x0, y0), theta0, a }
            }
            RegionSpec::Cardioid { a, c, x0, y0, theta0 } => {
                HoleRegion::Cardioid { a, c, center: Complex64::new(x0, y0), theta0 }
            }
        };
        region.check()?;
        Ok(region)
    }
}
