//! Adaptive quadrature used by every verification oracle.
//!
//! The 1D kernel is the classic 15-point Kronrod / 7-point Gauss pair applied
//! to a worst-first interval heap.  The 2D integrators are iterated versions
//! of the 1D rule over three domain shapes that cover every region this crate
//! needs: a rectangle, a `y`-limits-as-functions-of-`x` strip, and a polar
//! shell with angle-dependent inner/outer radii (the natural shape for holes
//! and hole complements intersected with a droplet).

use num_complex::Complex64;
use std::collections::BinaryHeap;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    /// Best estimate of the integral.
    pub value: f64,
    /// Estimated absolute error of `value`.
    pub abs_err: f64,
    /// Number of integrand evaluations spent.
    pub evals: usize,
}

/// Failure modes of the adaptive integrators.
#[derive(Debug, Clone)]
pub enum QuadError {
    /// The subdivision budget ran out before the error estimate met the
    /// tolerance; the best estimate found is attached.
    ToleranceNotMet { best: QuadResult },
    /// The integrand produced a non-finite value at a quadrature node.
    NonFiniteIntegrand { at: f64 },
}

impl std::fmt::Display for QuadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuadError::ToleranceNotMet { best } => write!(
                f,
                "quadrature tolerance not met: value ~ {:e}, error estimate {:e} after {} evaluations",
                best.value, best.abs_err, best.evals
            ),
            QuadError::NonFiniteIntegrand { at } => {
                write!(f, "integrand returned a non-finite value near {at:e}")
            }
        }
    }
}

impl std::error::Error for QuadError {}

/// 15-point Kronrod abscissae (positive half, descending), QUADPACK values.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_2,
    0.063_092_092_629_978_6,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// 7-point Gauss weights (for the odd-indexed Kronrod abscissae).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss–Kronrod panel: returns (kronrod estimate, rescaled error).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64), QuadError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    if !fc.is_finite() {
        return Err(QuadError::NonFiniteIntegrand { at: center });
    }
    let mut f_lo = [0.0f64; 7];
    let mut f_hi = [0.0f64; 7];
    for j in 0..7 {
        let x = half * XGK[j];
        f_lo[j] = f(center - x);
        f_hi[j] = f(center + x);
        if !f_lo[j].is_finite() {
            return Err(QuadError::NonFiniteIntegrand { at: center - x });
        }
        if !f_hi[j].is_finite() {
            return Err(QuadError::NonFiniteIntegrand { at: center + x });
        }
    }

    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = fc.abs() * WGK[7];
    for j in 0..7 {
        let fsum = f_lo[j] + f_hi[j];
        res_k += WGK[j] * fsum;
        res_abs += WGK[j] * (f_lo[j].abs() + f_hi[j].abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * fsum;
        }
    }

    // QUADPACK-style rescaling: measure |K − G| against the deviation of f
    // from its panel mean so oscillatory panels do not report spurious
    // confidence.
    let mean = res_k / 2.0;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((f_lo[j] - mean).abs() + (f_hi[j] - mean).abs());
    }
    let raw = ((res_k - res_g) * half).abs();
    let res_asc = res_asc * half.abs();
    let mut err = raw;
    if res_asc != 0.0 && raw != 0.0 {
        let scale = (200.0 * raw / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    let res_abs = res_abs * half.abs();
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    Ok((res_k * half, err))
}

#[derive(PartialEq)]
struct Panel {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
}

impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Hard cap on adaptive subdivisions per integral.
const MAX_PANELS: usize = 6000;

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// `tol` is a relative tolerance with an absolute floor of the same
/// magnitude: iteration stops once the global error estimate drops below
/// `tol · max(1, |I|)`.  Endpoints are never evaluated, so integrable
/// endpoint singularities (logarithmic or algebraic `x^{α−1}`, `α > 0`) are
/// handled by panel refinement alone.
pub fn quad1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult, QuadError> {
    quad1d_pts(f, a, b, &[], tol)
}

/// [`quad1d`] with declared interior break/singular points: the interval is
/// pre-split at each point so that panels never straddle a kink.
pub fn quad1d_pts<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    pts: &[f64],
    tol: f64,
) -> Result<QuadResult, QuadError> {
    if a == b {
        return Ok(QuadResult { value: 0.0, abs_err: 0.0, evals: 0 });
    }
    let sign = if a < b { 1.0 } else { -1.0 };
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let mut cuts: Vec<f64> = pts.iter().copied().filter(|&p| p > lo && p < hi).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap = BinaryHeap::new();
    let mut evals = 0usize;
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut prev = lo;
    for &c in cuts.iter().chain(std::iter::once(&hi)) {
        let (v, e) = gk15(&f, prev, c)?;
        evals += 15;
        total += v;
        total_err += e;
        heap.push(Panel { err: e, a: prev, b: c, value: v });
        prev = c;
    }

    let mut panels = heap.len();
    while total_err > tol * total.abs().max(1.0) * 0.999 && panels < MAX_PANELS {
        let worst = heap.pop().expect("heap cannot be empty while refining");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at floating-point resolution: cannot refine further.
            heap.push(Panel { err: 0.0, ..worst });
            continue;
        }
        let (v1, e1) = gk15(&f, worst.a, mid)?;
        let (v2, e2) = gk15(&f, mid, worst.b)?;
        evals += 30;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel { err: e1, a: worst.a, b: mid, value: v1 });
        heap.push(Panel { err: e2, a: mid, b: worst.b, value: v2 });
        panels += 1;
    }

    // Re-sum from the heap for a cleaner rounding profile on long runs.
    let value: f64 = heap.iter().map(|p| p.value).sum::<f64>() * sign;
    let abs_err: f64 = heap.iter().map(|p| p.err).sum();
    let best = QuadResult { value, abs_err, evals };
    if abs_err <= tol * value.abs().max(1.0) {
        Ok(best)
    } else {
        Err(QuadError::ToleranceNotMet { best })
    }
}

/// Two-dimensional integration domains.
///
/// `Polar` describes the set `{ center + r e^{iθ} : θ ∈ [θ₀, θ₁],
/// r_in(θ) ≤ r ≤ r_out(θ) }` and integrates with the polar Jacobian `r`
/// included, which is the natural chart both for holes (disks, sectors,
/// ellipses) and for droplet-minus-hole shells.
pub enum Domain2D<'a> {
    Rect { x0: f64, x1: f64, y0: f64, y1: f64 },
    XStrip {
        x0: f64,
        x1: f64,
        ylo: &'a dyn Fn(f64) -> f64,
        yhi: &'a dyn Fn(f64) -> f64,
    },
    Polar {
        center: Complex64,
        theta0: f64,
        theta1: f64,
        r_in: &'a dyn Fn(f64) -> f64,
        r_out: &'a dyn Fn(f64) -> f64,
    },
}

/// Iterated adaptive integration of `f` over a planar domain with respect to
/// Lebesgue area measure `d²z`.
///
/// The outer direction gets the full tolerance, the inner integrals a tenth
/// of it; both inherit the [`quad1d`] stopping rule.
pub fn quad2d<F: Fn(Complex64) -> f64>(
    f: F,
    domain: &Domain2D,
    tol: f64,
) -> Result<QuadResult, QuadError> {
    let evals = std::cell::Cell::new(0usize);
    let inner_tol = tol * 0.1;
    let res = match domain {
        Domain2D::Rect { x0, x1, y0, y1 } => quad1d(
            |x| {
                let inner = quad1d(|y| f(Complex64::new(x, y)), *y0, *y1, inner_tol)
                    .map(|r| {
                        evals.set(evals.get() + r.evals);
                        r.value
                    })
                    .unwrap_or(f64::NAN);
                inner
            },
            *x0,
            *x1,
            tol,
        ),
        Domain2D::XStrip { x0, x1, ylo, yhi } => quad1d(
            |x| {
                quad1d(|y| f(Complex64::new(x, y)), ylo(x), yhi(x), inner_tol)
                    .map(|r| {
                        evals.set(evals.get() + r.evals);
                        r.value
                    })
                    .unwrap_or(f64::NAN)
            },
            *x0,
            *x1,
            tol,
        ),
        Domain2D::Polar { center, theta0, theta1, r_in, r_out } => quad1d(
            |theta| {
                let dir = Complex64::new(theta.cos(), theta.sin());
                quad1d(
                    |r| r * f(center + r * dir),
                    r_in(theta),
                    r_out(theta),
                    inner_tol,
                )
                .map(|r| {
                    evals.set(evals.get() + r.evals);
                    r.value
                })
                .unwrap_or(f64::NAN)
            },
            *theta0,
            *theta1,
            tol,
        ),
    };
    res.map(|r| QuadResult { evals: r.evals + evals.get(), ..r })
}

/// Trapezoid rule over one period of a smooth periodic function — spectrally
/// accurate, used for boundary integrals over analytic closed curves.
pub fn periodic_trapezoid<F: Fn(f64) -> f64>(f: F, period: f64, n: usize) -> f64 {
    let h = period / n as f64;
    (0..n).map(|k| f(k as f64 * h)).sum::<f64>() * h
}
