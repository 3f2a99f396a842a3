//! Dimerized-chain (SSH) electronic structure with both quasiparticle
//! branches.
//!
//! With `ε_k = 2t₀ cos ka` and `Δ_k = 4αu sin ka`, the coherence factors
//! `α_k = √((1 ∓ ε_k/E_k)/2)`, `β_k = √((1 ± ε_k/E_k)/2)` admit two sign
//! choices. The lower sign is the textbook SSH solution (`E_c = E_k`); the
//! upper sign gives an additional branch with `E_c = (Δ_k² − ε_k²)/E_k`.
//!
//! The continuum ground-state energy of the additional branch is
//!
//! ```text
//! E₀(u) = −(2Na/π) ∫₀^{π/2a} (Δ_k² − ε_k²)/√(Δ_k² + ε_k²) dk + 2NKu²
//! ```
//!
//! evaluated here three ways: adaptive quadrature (ground truth), the
//! elliptic-integral closed form, and its small-coupling expansion.
//!
//! # Closed-form variable
//!
//! Substituting `θ = ka` gives `√(cos²θ + q² sin²θ)` with `q = 2αu/t₀`, so
//! the closed form
//!
//! ```text
//! (4Nt₀/π) { K(1−z²) + (1+z²)/(1−z²) [E(1−z²) − K(1−z²)] } + 2NKu²
//! ```
//!
//! (parameter convention, `K(m) = F(π/2, m)`) equals the quadrature when
//! `z = q = 2αu/t₀`. Reading the same symbol as `z² = 2αu/t₀` does not
//! reproduce the integral; [`ground_state_energy_elliptic_literal`] keeps
//! that reading available so the difference can be reported.

use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::numeric::{brent_minimize, complete_e, complete_k, integrate};

/// Model parameters of one dimerized chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SshParams {
    /// Hopping energy `t₀ > 0`.
    pub t0: f64,
    /// Electron-lattice coupling `α` (energy/length).
    pub alpha: f64,
    /// Spring constant `K > 0` (energy/length²).
    pub spring_k: f64,
    /// Lattice spacing `a > 0`.
    pub a: f64,
    /// Number of sites `N ≥ 1`.
    pub n_sites: usize,
    /// Dimerization coordinate `u` (any sign).
    pub u: f64,
}

impl SshParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.t0 > 0.0) {
            return Err(Error::InvalidParameter("t0 must be > 0"));
        }
        if !(self.spring_k > 0.0) {
            return Err(Error::InvalidParameter("spring constant K must be > 0"));
        }
        if !(self.a > 0.0) {
            return Err(Error::InvalidParameter("lattice spacing a must be > 0"));
        }
        if self.n_sites == 0 {
            return Err(Error::InvalidParameter("N must be >= 1"));
        }
        if !self.u.is_finite() || !self.alpha.is_finite() {
            return Err(Error::InvalidParameter("alpha and u must be finite"));
        }
        Ok(())
    }

    pub fn with_u(self, u: f64) -> Self {
        Self { u, ..self }
    }

    /// Gap-to-bandwidth ratio `q = |2αu/t₀|`, the variable of the closed form.
    pub fn gap_ratio(&self) -> f64 {
        (2.0 * self.alpha * self.u / self.t0).abs()
    }

    fn elastic(&self) -> f64 {
        2.0 * self.n_sites as f64 * self.spring_k * self.u * self.u
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Lower signs: the original SSH solution.
    SshLower,
    /// Upper signs: the additional branch.
    AdditionalUpper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupationState {
    pub n_c: f64,
    pub n_v: f64,
}

impl OccupationState {
    pub const EQUILIBRIUM: Self = Self { n_c: 0.0, n_v: 1.0 };

    pub fn new(n_c: f64, n_v: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&n_c) || !(0.0..=1.0).contains(&n_v) {
            return Err(Error::InvalidParameter("occupations must lie in [0, 1]"));
        }
        Ok(Self { n_c, n_v })
    }

    fn sign(&self) -> Result<f64> {
        let d = self.n_c - self.n_v;
        if d == 0.0 {
            Err(Error::IndeterminateSign)
        } else {
            Ok(d.signum())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dispersion {
    pub epsilon: f64,
    pub delta: f64,
    pub energy: f64,
}

pub fn dispersion(p: &SshParams, k: f64) -> Dispersion {
    let epsilon = 2.0 * p.t0 * (k * p.a).cos();
    let delta = 4.0 * p.alpha * p.u * (k * p.a).sin();
    Dispersion { epsilon, delta, energy: epsilon.hypot(delta) }
}

fn nondegenerate(p: &SshParams, k: f64) -> Result<Dispersion> {
    let d = dispersion(p, k);
    // cos(π/2) is not exactly zero in floating point
    let scale = 2.0 * p.t0.abs() + 4.0 * (p.alpha * p.u).abs();
    if d.energy <= 64.0 * f64::EPSILON * scale {
        return Err(Error::DegeneratePoint { k });
    }
    Ok(d)
}

/// `(α_k, β_k)` for the chosen branch.
pub fn coherence_coefficients(p: &SshParams, k: f64, branch: Branch) -> Result<(f64, f64)> {
    let d = nondegenerate(p, k)?;
    let r = d.epsilon / d.energy;
    let (minus, plus) = (((1.0 - r) / 2.0).sqrt(), ((1.0 + r) / 2.0).sqrt());
    Ok(match branch {
        Branch::AdditionalUpper => (minus, plus),
        Branch::SshLower => (plus, minus),
    })
}

/// `(E_c, E_v)` quasiparticle energies; always `E_v = −E_c`.
pub fn quasiparticle_energy(p: &SshParams, k: f64, branch: Branch) -> Result<(f64, f64)> {
    let d = nondegenerate(p, k)?;
    let e_c = match branch {
        Branch::SshLower => d.energy,
        Branch::AdditionalUpper => (d.delta * d.delta - d.epsilon * d.epsilon) / d.energy,
    };
    Ok((e_c, -e_c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionReport {
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
}

impl ConditionReport {
    pub fn all(&self) -> bool {
        self.cond1 && self.cond2 && self.cond3
    }
}

/// The three sufficient conditions for a constrained energy minimum.
///
/// The first condition compares `ε_k(1 ∓ ε_k/E_k)` with `Δ_k²/E_k`
/// (`−` for the SSH branch, `+` for the additional one): it must be smaller
/// when `n_c − n_v < 0` and larger when `n_c − n_v > 0`. The second is
/// branch independent,
/// `(ε_k²/E_k − 2Δ_k²/E_k)² − E_k² + ¾Δ_k² > 0`. The third is
/// `(3Δ_k²/E_k ± 4ε_k²/E_k)(n_c − n_v) > 0` with `+` for SSH.
pub fn minimum_conditions(p: &SshParams, k: f64, branch: Branch, occ: OccupationState) -> Result<ConditionReport> {
    let d = nondegenerate(p, k)?;
    let sign = occ.sign()?;
    let (eps, e) = (d.epsilon, d.energy);
    let d2_over_e = d.delta * d.delta / e;
    let e2_over_e = eps * eps / e;

    let lhs1 = match branch {
        Branch::SshLower => eps * (1.0 - eps / e),
        Branch::AdditionalUpper => eps * (1.0 + eps / e),
    };
    let cond1 = if sign < 0.0 { lhs1 < d2_over_e } else { lhs1 > d2_over_e };

    let cond2 = (e2_over_e - 2.0 * d2_over_e).powi(2) - e * e + 0.75 * d.delta * d.delta > 0.0;

    let factor3 = match branch {
        Branch::SshLower => 3.0 * d2_over_e + 4.0 * e2_over_e,
        Branch::AdditionalUpper => 3.0 * d2_over_e - 4.0 * e2_over_e,
    };
    let cond3 = factor3 * sign > 0.0;

    Ok(ConditionReport { cond1, cond2, cond3 })
}

/// Absolute quadrature tolerance used for the ground-state integral.
pub fn quadrature_tolerance(p: &SshParams) -> f64 {
    1e-10 * p.n_sites as f64 * p.t0
}

/// Ground-state energy of the additional branch by adaptive quadrature.
pub fn ground_state_energy_integral(p: &SshParams) -> Result<f64> {
    p.validate()?;
    let n = p.n_sites as f64;
    // dk = dθ/a cancels the leading a, so integrate over θ = ka ∈ [0, π/2].
    let eps0 = 2.0 * p.t0;
    let del0 = 4.0 * p.alpha * p.u;
    let integrand = |theta: f64| {
        let eps = eps0 * theta.cos();
        let del = del0 * theta.sin();
        let e = eps.hypot(del);
        if e == 0.0 {
            0.0
        } else {
            (del * del - eps * eps) / e
        }
    };
    // scaled so the energy error stays within 1e−10·N·t₀
    let tol = quadrature_tolerance(p) * PI / (2.0 * n);
    let q = integrate(integrand, 0.0, FRAC_PI_2, tol)?;
    Ok(-(2.0 * n / PI) * q.value + p.elastic())
}

fn elliptic_bracket(q: f64) -> f64 {
    // K + (1+q²)/(1−q²)(E − K), rearranged so q → 0 is well conditioned
    let q2 = q * q;
    if q2 == 0.0 {
        return 1.0;
    }
    let m = 1.0 - q2;
    let (k, e) = (complete_k(m), complete_e(m));
    ((1.0 + q2) * e - 2.0 * q2 * k) / m
}

/// Closed form of the ground-state energy with elliptic-integral parameter
/// `m = 1 − q²`, `q = |2αu/t₀|` (see the module docs).
///
/// Valid for `q < 1`; at `u = 0` it returns the limit `4Nt₀/π`.
pub fn ground_state_energy_elliptic(p: &SshParams) -> Result<f64> {
    p.validate()?;
    let q = p.gap_ratio();
    if q >= 1.0 {
        return Err(Error::Domain("closed form needs |2 alpha u / t0| < 1"));
    }
    let n = p.n_sites as f64;
    Ok(4.0 * n * p.t0 / PI * elliptic_bracket(q) + p.elastic())
}

/// The same closed form evaluated with `m = 1 − 2αu/t₀` (taking the
/// printed `z² = 2αu/t₀` literally). Kept only to quantify how far that
/// reading is from the integral.
pub fn ground_state_energy_elliptic_literal(p: &SshParams) -> Result<f64> {
    p.validate()?;
    let z2 = p.gap_ratio();
    if z2 >= 1.0 {
        return Err(Error::Domain("closed form needs |2 alpha u / t0| < 1"));
    }
    let n = p.n_sites as f64;
    Ok(4.0 * n * p.t0 / PI * elliptic_bracket(z2.sqrt()) + p.elastic())
}

/// Small-coupling expansion
/// `N{4t₀/π − (6/π) ln(2t₀/α|u|)·4α²u²/t₀ + 28α²u²/(πt₀)} + 2NKu²`.
///
/// Uses `|αu|` in the logarithm; `u = 0` returns the constant term.
pub fn ground_state_energy_smallz(p: &SshParams) -> Result<f64> {
    p.validate()?;
    let n = p.n_sites as f64;
    let au = (p.alpha * p.u).abs();
    let mut bracket = 4.0 * p.t0 / PI;
    if au > 0.0 {
        let a2u2 = au * au;
        bracket += -(6.0 / PI) * (2.0 * p.t0 / au).ln() * (4.0 * a2u2 / p.t0) + 28.0 * a2u2 / (PI * p.t0);
    }
    Ok(n * bracket + p.elastic())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dimerization {
    /// Symmetric pair of minima at `±u0` with energy `E₀(u0) < E₀(0)`.
    Dimerized { u0: f64, energy: f64, energy_at_zero: f64 },
    /// No interior minimum in the searched range.
    Undimerized { reason: NoMinimum },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoMinimum {
    /// `E₀(0)` is the lowest value: the Peierls distortion is absent (or
    /// below the search resolution).
    PeierlsAbsent,
    /// Energy still decreasing at `u_max`.
    MinimumBeyondRange,
}

impl Dimerization {
    /// `(u₀, −u₀, E₀(u₀))` when dimerized.
    pub fn minima(&self) -> Option<(f64, f64, f64)> {
        match *self {
            Dimerization::Dimerized { u0, energy, .. } => Some((u0, -u0, energy)),
            Dimerization::Undimerized { .. } => None,
        }
    }
}

/// Number of scan points used to bracket the minimum.
pub const BRACKET_SCAN_POINTS: usize = 200;

/// Locates the positive minimum of `E₀(u)` on `(0, u_max]` by a coarse scan
/// followed by Brent's method on the quadrature evaluator. The `u` field of
/// `params` is ignored.
pub fn find_dimerization_minima(params: &SshParams, u_max: f64) -> Result<Dimerization> {
    params.with_u(0.0).validate()?;
    if !(u_max > 0.0) {
        return Err(Error::InvalidParameter("u_max must be > 0"));
    }
    let energy = |u: f64| ground_state_energy_integral(&params.with_u(u));
    let e0 = energy(0.0)?;
    let m = BRACKET_SCAN_POINTS;
    let step = u_max / m as f64;
    let mut best = (0usize, e0);
    for i in 1..=m {
        let e = energy(step * i as f64)?;
        if e < best.1 {
            best = (i, e);
        }
    }
    match best.0 {
        0 => return Ok(Dimerization::Undimerized { reason: NoMinimum::PeierlsAbsent }),
        i if i == m => return Ok(Dimerization::Undimerized { reason: NoMinimum::MinimumBeyondRange }),
        _ => {}
    }
    let lo = step * (best.0 - 1) as f64;
    let hi = step * (best.0 + 1) as f64;
    let min = brent_minimize(energy, lo, hi, 1e-8 * u_max)?;
    let (u0, e_min) = if min.value <= best.1 { (min.x, min.value) } else { (step * best.0 as f64, best.1) };
    if !(e_min < e0) {
        return Ok(Dimerization::Undimerized { reason: NoMinimum::PeierlsAbsent });
    }
    Ok(Dimerization::Dimerized { u0, energy: e_min, energy_at_zero: e0 })
}
