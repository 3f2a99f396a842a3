//! Complete elliptic integrals in the parameter convention.
//!
//! ```text
//! K(m) = ∫₀^{π/2} dθ / √(1 − m sin²θ)
//! E(m) = ∫₀^{π/2} √(1 − m sin²θ) dθ
//! ```
//!
//! `m = k²` where `k` is the modulus; `F(π/2, m) = K(m)` and
//! `E(π/2, m) = E(m)`. Both use the arithmetic-geometric mean.

use core::f64::consts::FRAC_PI_2;

const MAX_ITER: usize = 40;

/// Runs the AGM of `(1, √(1−m))`, returning the limit and
/// `Σ 2^(i−1) c_i²` needed for `E`.
fn agm(m: f64) -> (f64, f64) {
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    // c₀² = m (negative m is allowed)
    let mut c = f64::INFINITY;
    let mut sum = 0.5 * m;
    let mut pow2 = 0.5;
    for _ in 0..MAX_ITER {
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        let a_next = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = (a * b).sqrt();
        a = a_next;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    (a, sum)
}

/// `K(m)` for `m < 1`. Returns `+∞` at `m = 1` and NaN above.
pub fn complete_k(m: f64) -> f64 {
    if m.is_nan() || m > 1.0 {
        return f64::NAN;
    }
    if m == 1.0 {
        return f64::INFINITY;
    }
    if m == 0.0 {
        return FRAC_PI_2;
    }
    let (a, _) = agm(m);
    FRAC_PI_2 / a
}

/// `E(m)` for `m ≤ 1`; `E(1) = 1`.
pub fn complete_e(m: f64) -> f64 {
    if m.is_nan() || m > 1.0 {
        return f64::NAN;
    }
    if m == 1.0 {
        return 1.0;
    }
    if m == 0.0 {
        return FRAC_PI_2;
    }
    let (a, sum) = agm(m);
    FRAC_PI_2 / a * (1.0 - sum)
}
