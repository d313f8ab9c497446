//! Lattice series with tanh weights and the triangular binomial systems
//! shared by the rectangle and ellipse modules.
//!
//! The central family is
//!
//! ```text
//! T(v,α) = (α^{−1−v/2}/2) Σ_{m≥0} tanh(α(1+2m)π/2)/(1+2m)^{3+v}
//!        + e^{iπv/2} (α^{1+v/2}/2) Σ_{m≥0} tanh((1+2m)π/(2α))/(1+2m)^{3+v}
//! ```
//!
//! evaluated two ways — term-by-term with rigorous tails ([`t_direct`]) and
//! by a closed recursion ([`t_recursive`]) — so that each can serve as an
//! oracle for the other.  The plain sum `Σ tanh((1+2m)π/2)/(1+2m)^{3+v}`
//! ([`t_plain`]) shows up on its own in the square-hole constants.

use crate::specialfn::hurwitz_zeta;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::f64::consts::PI;

/// A numerically evaluated series together with its truncation bookkeeping.
#[derive(Clone, Copy, Debug)]
pub struct SeriesValue {
    pub value: f64,
    pub terms_used: usize,
    /// Rigorous bound on everything discarded or approximated in the tail.
    pub tail_bound: f64,
}

/// Hard cap on explicitly summed terms (reached only for absurd `α`).
const MAX_TERMS: usize = 20_000_000;

/// One weighted sum `Σ_{m≥0} tanh(β(1+2m)π/2)/(1+2m)^s`, split at the index
/// where tanh saturates to 1 within 1e−16; the remainder is the exact zeta
/// tail `2^{−s} ζ_H(s, M+1/2)`.
fn tanh_power_sum(s: f64, beta: f64) -> (f64, usize, f64) {
    // 1 − tanh(x) ≤ 2e^{−2x}; x = β(1+2m)π/2 ≥ 40 ⇒ error per term < 4e−35.
    let m_sat = ((40.0 / (beta * PI)).ceil() as usize).min(MAX_TERMS).max(1);
    let int_s = if s.fract() == 0.0 && s < 64.0 { Some(s as i32) } else { None };
    let mut sum = 0.0;
    for m in 0..m_sat {
        let odd = (1 + 2 * m) as f64;
        let t = (beta * odd * PI / 2.0).tanh();
        let denom = match int_s {
            Some(p) => odd.powi(p),
            None => odd.powf(s),
        };
        sum += t / denom;
    }
    let tail = 2.0f64.powf(-s) * hurwitz_zeta(s, m_sat as f64 + 0.5);
    // Saturation error bound over the tail, plus Hurwitz evaluation slack.
    let sat_bound = 2.0 * (-beta * PI * (1.0 + 2.0 * m_sat as f64)).exp() * tail;
    let bound = sat_bound + 1e-14 * tail.abs();
    (sum + tail, m_sat, bound)
}

/// Direct summation of `T(v,α)` with rigorous tails (tolerance 1e−13 for
/// any reasonable `α`).  For even integer `v` the phase on the second sum
/// is exactly `(−1)^{v/2}`; for other `v` the real part of `e^{iπv/2}` is
/// used.
pub fn t_direct(v: f64, alpha: f64) -> SeriesValue {
    assert!(v >= 0.0 && alpha > 0.0, "need v ≥ 0 and α > 0");
    let s = 3.0 + v;
    let (sum_a, terms_a, tail_a) = tanh_power_sum(s, alpha);
    let (sum_b, terms_b, tail_b) = tanh_power_sum(s, 1.0 / alpha);
    let phase = if v % 2.0 == 0.0 {
        if (v / 2.0) as i64 % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    } else {
        (PI * v / 2.0).cos()
    };
    let pre_a = alpha.powf(-1.0 - v / 2.0) / 2.0;
    let pre_b = alpha.powf(1.0 + v / 2.0) / 2.0;
    SeriesValue {
        value: pre_a * sum_a + phase * pre_b * sum_b,
        terms_used: terms_a + terms_b,
        tail_bound: pre_a * tail_a + pre_b * tail_b,
    }
}

/// The plain sum `T_v = Σ_{m≥0} tanh((1+2m)π/2)/(1+2m)^{3+v}` (the `α = 1`
/// series without prefactors, nonzero for every `v`).
pub fn t_plain(v: f64) -> SeriesValue {
    assert!(v >= 0.0, "need v ≥ 0");
    let (value, terms_used, tail_bound) = tanh_power_sum(3.0 + v, 1.0);
    SeriesValue { value, terms_used, tail_bound }
}

/// `T(v,α)` for even `v` from the recursion seeded at `T(0,α) = π³/32`:
///
/// ```text
/// T(2v,α) = π^{3+2v}/((2v)!·4^{v+3}(v+1)(2v+1)) · Im w^{2+2v}
///         − Σ_{q<v} π^{2(v−q)}/((2(v−q))!·4^{v−q}) · Re w^{2(v−q)} · T(2q,α)
/// ```
///
/// with `w = √α + i/√α`.
pub fn t_recursive(v: u32, alpha: f64) -> f64 {
    assert!(v % 2 == 0, "recursion is defined for even v");
    assert!(alpha > 0.0, "need α > 0");
    let w = Complex64::new(alpha.sqrt(), 1.0 / alpha.sqrt());
    let vmax = (v / 2) as usize;
    let mut t = vec![0.0f64; vmax + 1];
    t[0] = PI.powi(3) / 32.0;
    for big_v in 1..=vmax {
        let vv = big_v as f64;
        let lead = PI.powf(3.0 + 2.0 * vv)
            / (factorial(2 * big_v) * 4.0f64.powi(big_v as i32 + 3) * (vv + 1.0) * (2.0 * vv + 1.0))
            * w.powi(2 + 2 * big_v as i32).im;
        let mut acc = lead;
        for q in 0..big_v {
            let d = big_v - q;
            acc -= PI.powi(2 * d as i32) / (factorial(2 * d) * 4.0f64.powi(d as i32))
                * w.powi(2 * d as i32).re
                * t[q];
        }
        t[big_v] = acc;
    }
    t[vmax]
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Closed forms of `T(v,α)` for `v ∈ {0,2,4,6,8,10}` (`None` otherwise).
pub fn t_closed(v: u32, alpha: f64) -> Option<f64> {
    let a = alpha;
    let p = |k: i32| a.powi(k) ;
    Some(match v {
        0 => PI.powi(3) / 32.0,
        2 => PI.powi(5) * (p(-1) - p(1)) / 384.0,
        4 => PI.powi(7) * (6.0 * (p(-2) + p(2)) - 5.0) / 23040.0,
        6 => PI.powi(9) * (17.0 * (p(-3) - p(3)) - 14.0 * (p(-1) - p(1))) / 645120.0,
        8 => {
            PI.powi(11) * (310.0 * (p(-4) + p(4)) - 255.0 * (p(-2) + p(2)) + 252.0) / 116121600.0
        }
        10 => {
            PI.powi(13)
                * (2073.0 * (p(-5) - p(5)) - 1705.0 * (p(-3) - p(3)) + 1683.0 * (p(-1) - p(1)))
                / 7664025600.0
        }
        _ => return None,
    })
}

/// Closed forms of the plain series `T_v` for `v ∈ {0,4,8,12}` (`None`
/// otherwise to stay honest about what is actually known in closed form).
pub fn t_plain_closed(v: u32) -> Option<f64> {
    Some(match v {
        0 => PI.powi(3) / 32.0,
        4 => 7.0 * PI.powi(7) / 23040.0,
        8 => 181.0 * PI.powi(11) / 58060800.0,
        12 => 178559.0 * PI.powi(15) / 5579410636800.0,
        _ => return None,
    })
}

fn big_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

fn big_binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    big_factorial(n) / (big_factorial(k) * big_factorial(n - k))
}

/// Exact-rational coefficients `d_ℓ^{(k)}`, `ℓ = k…b`, solving the
/// triangular system `Σ_{ℓ=k}^q d_ℓ^{(k)} C(2q, q−ℓ) = C(2q, q−k)/(q+b)`
/// for `q = k…b` via the explicit inverse:
///
/// ```text
/// d_ℓ^{(k)} = C(2ℓ, ℓ−k)/(b+ℓ)
///           + 2ℓ Σ_{m=0}^{ℓ−k−1} (−1)^{ℓ−k−m} (k+ℓ+m−1)! / (m!(2k+m)!(ℓ−k−m)!(b+k+m))
/// ```
pub fn d_coeffs_exact(b: u32, k: u32) -> Vec<BigRational> {
    assert!(k < b, "need 0 ≤ k ≤ b−1");
    let (b, k) = (b as i64, k as i64);
    (k..=b)
        .map(|l| {
            let mut d = BigRational::new(big_binomial(2 * l, l - k), BigInt::from(b + l));
            for m in 0..(l - k) {
                let sign = if (l - k - m) % 2 == 0 { 1 } else { -1 };
                let num = BigInt::from(sign * 2 * l) * big_factorial(k + l + m - 1);
                let den = big_factorial(m)
                    * big_factorial(2 * k + m)
                    * big_factorial(l - k - m)
                    * BigInt::from(b + k + m);
                d += BigRational::new(num, den);
            }
            d
        })
        .collect()
}

/// Floating-point view of [`d_coeffs_exact`] (the alternating sum is
/// cancellation-prone for `b ≥ 5`, so the arithmetic stays rational until
/// this boundary).
pub fn d_coeffs(b: u32, k: u32) -> Vec<f64> {
    d_coeffs_exact(b, k)
        .into_iter()
        .map(|r| {
            // Convert with ~f64 precision via a scaled integer quotient.
            let scale = BigInt::from(1u64 << 60);
            let scaled = (r * &scale).round().to_integer();
            let (sign, digits) = scaled.to_u64_digits();
            let mut mag = 0.0f64;
            for &d in digits.iter().rev() {
                mag = mag * 1.8446744073709552e19 + d as f64;
            }
            let signed = if sign == num_bigint::Sign::Minus { -mag } else { mag };
            signed / (1u64 << 60) as f64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn t0_is_pi_cubed_over_32() {
        for alpha in [0.5, 1.0, 2.0] {
            let t = t_direct(0.0, alpha);
            assert_abs_diff_eq!(t.value, PI.powi(3) / 32.0, epsilon = 1e-13);
            assert!(t.tail_bound < 1e-13);
        }
    }

    #[test]
    fn t2_at_alpha_one_vanishes() {
        assert!(t_direct(2.0, 1.0).value.abs() < 1e-13);
    }

    #[test]
    fn t6_direct_against_stricter_oracle() {
        // Same series summed far past saturation with a brute-force loop.
        let alpha = 0.7f64;
        let s = 9.0; // 3 + v with v = 6
        let brute = |beta: f64| -> f64 {
            let mut sum = 0.0;
            for m in 0..200_000u64 {
                let odd = (1 + 2 * m) as f64;
                sum += (beta * odd * PI / 2.0).tanh() / odd.powf(s);
            }
            sum
        };
        let expect = alpha.powf(-4.0) / 2.0 * brute(alpha) - alpha.powf(4.0) / 2.0 * brute(1.0 / alpha);
        assert_abs_diff_eq!(t_direct(6.0, alpha).value, expect, epsilon = 1e-13);
    }

    #[test]
    fn recursive_matches_closed_forms() {
        for v in [0u32, 2, 4, 6, 8, 10] {
            for alpha in [0.5, 1.0, 1.3, 2.0, 3.0] {
                let rec = t_recursive(v, alpha);
                let closed = t_closed(v, alpha).unwrap();
                let scale = closed.abs().max(1e-3);
                assert!(
                    (rec - closed).abs() <= 1e-12 * scale,
                    "v={v} α={alpha}: {rec} vs {closed}"
                );
            }
        }
        // Spot value: T(2,2) = π⁵(1/2 − 2)/384 = −π⁵/256.
        assert_abs_diff_eq!(t_recursive(2, 2.0), -PI.powi(5) / 256.0, epsilon = 1e-12);
    }

    #[test]
    fn direct_matches_recursive_on_grid() {
        for v in [0u32, 2, 4, 6, 8, 10] {
            for alpha in [0.5, 1.0, 2.0, 3.0] {
                let d = t_direct(v as f64, alpha).value;
                let r = t_recursive(v, alpha);
                assert!((d - r).abs() <= 1e-11, "v={v} α={alpha}: {d} vs {r}");
            }
        }
    }

    #[test]
    fn plain_series_closed_values_match() {
        for v in [0u32, 4, 8, 12] {
            let series = t_plain(v as f64);
            assert_abs_diff_eq!(series.value, t_plain_closed(v).unwrap(), epsilon = 1e-12);
            // For v ∈ 4N the plain series equals T(v,1).
            assert_abs_diff_eq!(series.value, t_direct(v as f64, 1.0).value, epsilon = 1e-12);
        }
        // v = 2: plain series is nonzero although T(2,1) = 0.
        assert!(t_plain(2.0).value > 0.9);
        assert!(t_direct(2.0, 1.0).value.abs() < 1e-13);
    }

    #[test]
    fn inversion_symmetry_alpha_to_reciprocal() {
        // T(v, 1/α) = (−1)^{v/2} T(v, α) for even v.
        for v in [2u32, 4, 6, 8, 10] {
            let sign = if (v / 2) % 2 == 0 { 1.0 } else { -1.0 };
            for alpha in [0.6, 1.7, 2.4] {
                let lhs = t_direct(v as f64, 1.0 / alpha).value;
                let rhs = sign * t_direct(v as f64, alpha).value;
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn d_coeffs_match_rational_back_substitution() {
        for b in 1..=6u32 {
            for k in 0..b {
                let d = d_coeffs_exact(b, k);
                // Forward-substitute the triangular system directly.
                let n = (b - k + 1) as usize;
                let mut solved: Vec<BigRational> = Vec::with_capacity(n);
                for i in 0..n {
                    let q = k as i64 + i as i64;
                    let mut rhs = BigRational::new(
                        big_binomial(2 * q, q - k as i64),
                        BigInt::from(q + b as i64),
                    );
                    for (j, s) in solved.iter().enumerate() {
                        let l = k as i64 + j as i64;
                        rhs -= s * BigRational::from(big_binomial(2 * q, q - l));
                    }
                    solved.push(rhs); // diagonal entries C(2q, 0) = 1
                }
                assert_eq!(d, solved, "b={b} k={k}");
            }
        }
    }

    #[test]
    fn d_identity_holds_for_even_n_beyond_defining_range() {
        // (1/(q+b)) C(2q, q−k) = Σ_ℓ d_ℓ^{(k)} C(2q, q−ℓ) for all q, not just
        // the defining q ≤ b; exact in rational arithmetic for 2q ≤ 40.
        for b in 1..=6u32 {
            for k in 0..b {
                let d = d_coeffs_exact(b, k);
                for q in 0..=20i64 {
                    let lhs =
                        BigRational::new(big_binomial(2 * q, q - k as i64), BigInt::from(q + b as i64));
                    let mut rhs = BigRational::zero();
                    for (j, dj) in d.iter().enumerate() {
                        let l = k as i64 + j as i64;
                        rhs += dj * BigRational::from(big_binomial(2 * q, q - l));
                    }
                    assert_eq!(lhs, rhs, "b={b} k={k} q={q}");
                }
            }
        }
    }

    #[test]
    fn d_coeffs_float_view_is_accurate() {
        for b in [3u32, 5, 6] {
            for k in 0..b {
                let exact = d_coeffs_exact(b, k);
                let float = d_coeffs(b, k);
                for (e, f) in exact.iter().zip(&float) {
                    let approx_e = e.numer().to_string().parse::<f64>().unwrap()
                        / e.denom().to_string().parse::<f64>().unwrap();
                    assert_abs_diff_eq!(*f, approx_e, epsilon = 1e-12 * approx_e.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn tail_bounds_are_honest() {
        // Compare a deliberately early-truncated sum with the reported value:
        // the difference must fall under the reported tail bound + slack.
        let t = t_plain(2.0);
        assert!(t.tail_bound < 1e-13);
        let mut brute = 0.0;
        for m in 0..1_000_000u64 {
            let odd = (1 + 2 * m) as f64;
            brute += (odd * PI / 2.0).tanh() / odd.powi(5);
        }
        // Remaining tail of the brute sum itself is < (2e6)^{-4}/4 ≈ 1.6e-26.
        assert_abs_diff_eq!(t.value, brute, epsilon = 1e-13);
    }
}
