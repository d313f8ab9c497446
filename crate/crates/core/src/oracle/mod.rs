//! Independent verification machinery: adaptive quadrature, moment-matching
//! reports for balayage densities, Green-function constants for unbounded
//! holes, and a weighted-Fekete energy minimizer.
//!
//! Nothing in this module reuses the closed forms it checks: quadrature works
//! from the raw measure definitions, and the Fekete minimizer only sees the
//! potential `Q`, its gradient, and a nearest-point projection of the hole.

mod fekete;
mod moments;
mod quad;

pub use fekete::{fekete_minimize, FeketeConfig, FeketeError, PointCloud};
pub use moments::{c_u_mu_quadrature, verify_moments, MomentEntry, MomentReport};
pub use quad::{periodic_trapezoid, quad1d, quad1d_pts, quad2d, Domain2D, QuadError, QuadResult};
