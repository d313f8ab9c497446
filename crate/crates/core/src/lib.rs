//! Balayage measures and leading-order hole-probability constants for planar
//! Coulomb gases.
//!
//! A two-dimensional Coulomb gas is an ensemble of `n` points with joint
//! density proportional to `Π|z_j−z_k|^β exp(−nβ Q(z_k)/2)` for an external
//! potential `Q`.  As `n → ∞` the points fill a droplet `S` according to the
//! equilibrium measure `μ`, and the probability that a fixed region `U ⊂ S`
//! stays empty of points decays like `exp(−C n² + o(n²))`.  This crate
//! computes, in closed form wherever one is known and by quadrature
//! otherwise,
//!
//! * the *balayage measure* `ν = Bal(μ|_U, ∂U)` — the charge swept out of the
//!   hole onto its boundary ([`balayage`]),
//! * the *hole constant* `C = (β/4)(∫_{∂U} Q dν + 2 c_U^μ − ∫_U Q dμ)`
//!   ([`constants`]),
//!
//! for the Ginibre, elliptic Ginibre, Mittag-Leffler, spherical and general
//! radially symmetric potentials, over disk, annulus, sector, ellipse,
//! rectangle, triangle, cardioid and complement-type holes.
//!
//! Everything is cross-verified against independent oracles ([`oracle`]):
//! adaptive Gauss–Kronrod quadrature, moment matching of `ν` against `μ|_U`,
//! Green-function boundary densities, and a weighted-Fekete energy minimizer.
//!
//! Module layout:
//!
//! | module       | contents                                                        |
//! |--------------|-----------------------------------------------------------------|
//! | [`specialfn`]| digamma, trigamma, ζ(2m), incomplete beta, K/K′, Jacobi sn, …   |
//! | [`model`]    | potentials, equilibrium measures, hole regions, validity checks |
//! | [`identities`]| the `T_{v,α}` series family and the `d_ℓ^{(k)}` coefficients   |
//! | [`balayage`] | closed-form boundary densities plus a Green-function fallback   |
//! | [`constants`]| the hole constant `C` for every covered (potential, region) pair|
//! | [`oracle`]   | quadrature, moment checks, Fekete minimizer                     |
//! | [`regression`]| the canonical case matrix driven by the CLI regression runner  |

pub mod balayage;
pub mod constants;
pub mod identities;
pub mod model;
pub mod oracle;
pub mod regression;
pub mod specialfn;

pub use num_complex::Complex64;
