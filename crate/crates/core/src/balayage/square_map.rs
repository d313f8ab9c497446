//! Elliptic conformal-map oracle for the centered square hole.
//!
//! The square `(−c/2, c/2)²` is mapped onto the upper half-plane by the
//! Jacobi elliptic sine: with the modulus `κ` fixed by the square's aspect
//! through `K′(κ) = 2K(κ)`,
//!
//! ```text
//! φ(z) = sn( K(κ) (z + i c/2) · 2/c , κ )
//! ```
//!
//! sends the bottom side to `[−1, 1]`, the right side to `[1, 1/κ]` (where
//! `φ(c/2 + iy) = 1/dn(v, κ′)`, `v = 2K(y + c/2)/c`), and the interior to
//! `Im φ > 0`.  The swept density of the uniform measure then follows from
//! the same half-plane kernel as the Green-function oracle:
//!
//! ```text
//! ρ(y) = (φ′ · n̂ factor / π) ∫∫_square Im φ(w) / |φ(w) − ξ|² (1/π) d²w,
//! ```
//!
//! with the boundary derivative taken by a fourth-order finite difference
//! along the side.  Everything here is an independent check of the square
//! cosine series — elliptic functions against lattice sums — and nothing is
//! consumed by the closed-form dispatch.

use super::{invalid, BalayageError};
use crate::oracle::{quad1d, quad1d_pts, QuadError};
use crate::specialfn::{elliptic_k, elliptic_k_prime, jacobi_sn_with, Nome, SpecialFnError};
use num_complex::Complex64;
use std::f64::consts::PI;

fn sf_err(e: SpecialFnError) -> BalayageError {
    BalayageError::Invalid { what: format!("special-function failure: {e:?}") }
}

/// The modulus at which the fundamental rectangle of `sn` is the square's
/// double cover: the unique root of `K′(κ) = 2K(κ)` in `(0, 1)`.
pub fn kappa_square() -> Result<f64, BalayageError> {
    let f = |k: f64| -> Result<f64, BalayageError> {
        Ok(elliptic_k_prime(k).map_err(sf_err)? - 2.0 * elliptic_k(k).map_err(sf_err)?)
    };
    let (mut lo, mut hi) = (1e-6, 1.0 - 1e-6);
    // K′ − 2K falls monotonically from +∞-ish to negative across (0,1).
    // Bisect to machine precision: the κ error enters the two boundary
    // parameterizations of the map with different sensitivities, so a loose
    // root would show up as a spurious mismatch between them.
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Step used for the boundary derivative `φ′` (fourth-order central
/// difference), and how much corner clearance that derivative needs.
const FD_STEP: f64 = 1e-3;

/// Swept density, per unit length of the right side, of the uniform unit
/// measure `d²z/π` restricted to the square `(−c/2, c/2)²`, evaluated at
/// height `y` through the elliptic conformal map.  By the square's symmetry
/// this is the profile of all four sides.
pub fn bal_square_elliptic(c: f64, y: f64, tol: f64) -> Result<f64, BalayageError> {
    if !(c > 0.0 && c < std::f64::consts::SQRT_2) {
        return Err(invalid(format!(
            "square side c = {c} outside (0, √2); the hole must fit in the unit droplet"
        )));
    }
    let half = c / 2.0;
    if !(-half..=half).contains(&y) {
        return Err(invalid(format!("height y = {y} outside [−{half}, {half}]")));
    }
    if y == -half || y == half {
        return Ok(0.0);
    }
    if half - y.abs() < 2.5 * FD_STEP {
        return Err(invalid(format!(
            "height y = {y} within {} of a corner: the finite-difference boundary derivative needs clearance",
            2.5 * FD_STEP
        )));
    }
    let kappa = kappa_square()?;
    let nome = Nome::from_modulus(kappa).map_err(sf_err)?;
    let scale = 2.0 * nome.k / c;
    let phi = |w: Complex64| -> Result<Complex64, SpecialFnError> {
        jacobi_sn_with(scale * (w + Complex64::new(0.0, half)), &nome)
    };
    // Boundary value and its derivative along the right side; the map sends
    // the side to a real segment, so only the real part carries information.
    let edge = |h: f64| -> Result<f64, BalayageError> {
        Ok(phi(Complex64::new(half, y + h)).map_err(sf_err)?.re)
    };
    let xi = edge(0.0)?;
    let d_edge = (-edge(2.0 * FD_STEP)? + 8.0 * edge(FD_STEP)? - 8.0 * edge(-FD_STEP)?
        + edge(-2.0 * FD_STEP)?)
        / (12.0 * FD_STEP);
    // ∫∫ Im φ / |φ − ξ|² over the square; the kernel peaks at (c/2, y), so
    // the outer x-direction refines toward its endpoint and the inner
    // y-direction is pre-split at the target height.
    let outer = |x: f64| {
        let inner = |yy: f64| match phi(Complex64::new(x, yy)) {
            Ok(p) => p.im / (p - xi).norm_sqr(),
            Err(_) => f64::NAN,
        };
        match quad1d_pts(&inner, -half, half, &[y], tol * 0.1) {
            Ok(r) => r.value,
            Err(QuadError::ToleranceNotMet { best }) => best.value,
            Err(_) => f64::NAN,
        }
    };
    let integral = match quad1d(&outer, -half, half, tol) {
        Ok(r) => r.value,
        Err(QuadError::ToleranceNotMet { best }) => best.value,
        Err(e) => return Err(e.into()),
    };
    Ok(d_edge / PI * integral / PI)
}
