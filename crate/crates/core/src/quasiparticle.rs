//! Soliton/polaron profiles, coherence lengths and the AFESWR frequency
//! reference values for σ-polaron lattices.

use crate::error::{Error, Result};

/// Reduced Planck constant in eV·s, for building `ħv_F` from a velocity.
pub const HBAR_EV_S: f64 = 6.582_119_569e-16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    Pi,
    Sigma,
}

/// Rigidly translating `sech²` profile of a π- or σ-quasiparticle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonProfile {
    /// Coherence length `ξ > 0` (length units).
    pub xi: f64,
    /// Center site index.
    pub n0: f64,
    /// Velocity term multiplying `t` inside the `sech²` argument.
    pub v: f64,
    pub subsystem: Subsystem,
}

impl SolitonProfile {
    pub fn new(xi: f64, n0: f64, v: f64, subsystem: Subsystem) -> Result<Self> {
        if !(xi > 0.0) {
            return Err(Error::InvalidParameter("coherence length must be > 0"));
        }
        Ok(Self { xi, n0, v, subsystem })
    }

    /// `(1/ξ) sech²[(x − n₀a)/ξ − vt]` for continuous position `x`.
    pub fn envelope_at(&self, x: f64, t: f64, a: f64) -> f64 {
        let s = 1.0 / ((x - self.n0 * a) / self.xi - self.v * t).cosh();
        s * s / self.xi
    }

    /// Mask-free density at site `n`.
    pub fn envelope(&self, n: i64, t: f64, a: f64) -> f64 {
        self.envelope_at(n as f64 * a, t, a)
    }

    /// `(1/ξ) sech²[(n − n₀)a/ξ − vt] · cos(nπ/2)`, with the site mask
    /// exactly as written; it is negative at `n ≡ 2 (mod 4)`.
    pub fn density(&self, n: i64, t: f64, a: f64) -> f64 {
        self.envelope(n, t, a) * site_mask(n)
    }
}

/// `cos(nπ/2)` evaluated exactly: `1, 0, −1, 0` for `n mod 4 = 0, 1, 2, 3`.
pub fn site_mask(n: i64) -> f64 {
    match n.rem_euclid(4) {
        0 => 1.0,
        2 => -1.0,
        _ => 0.0,
    }
}

pub fn soliton_density(profile: &SolitonProfile, n: i64, t: f64, a: f64) -> f64 {
    profile.density(n, t, a)
}

/// `ξ = ħv_F / Δ` with `ħv_F` passed as one product (e.g. eV·nm).
pub fn coherence_length(hbar_vf: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::Domain("bandgap must be > 0"));
    }
    if !(hbar_vf > 0.0) {
        return Err(Error::Domain("hbar * v_F must be > 0"));
    }
    Ok(hbar_vf / delta)
}

/// `ξ_σ = ξ_π / (Δ_σ/Δ_π)`.
pub fn sigma_length_estimate(xi_pi_mean: f64, gap_ratio: f64) -> Result<f64> {
    if !(gap_ratio > 0.0) {
        return Err(Error::Domain("gap ratio must be > 0"));
    }
    if !(xi_pi_mean > 0.0) {
        return Err(Error::Domain("coherence length must be > 0"));
    }
    Ok(xi_pi_mean / gap_ratio)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceData {
    pub delta_pi: f64,
    pub delta_sigma: f64,
    pub hbar_vf: f64,
}

impl CoherenceData {
    pub fn ratio(&self) -> f64 {
        self.delta_sigma / self.delta_pi
    }

    pub fn xi_pi(&self) -> Result<f64> {
        coherence_length(self.hbar_vf, self.delta_pi)
    }

    pub fn xi_sigma(&self) -> Result<f64> {
        coherence_length(self.hbar_vf, self.delta_sigma)
    }
}

/// AFESWR reference values in cm⁻¹.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AfeswrReference {
    /// Central (AFR) mode in carbyne.
    pub carbyne_central: f64,
    /// IR-detected splitting parameter in carbyne.
    pub carbyne_split_ir: f64,
    /// Splitting expected under Raman detection.
    pub expected_split_rs: f64,
    /// Estimated IR σ-polaron line range for t-PA.
    pub tpa_range: (f64, f64),
    /// Estimated IR σ-polaron line range for quasi-1D nanotubes.
    pub nt_range: (f64, f64),
    /// Upper edge of the Raman-active estimate.
    pub rs_upper: f64,
}

pub const AFESWR_REFERENCE: AfeswrReference = AfeswrReference {
    carbyne_central: 477.0,
    carbyne_split_ir: 150.0,
    expected_split_rs: 300.0,
    tpa_range: (386.7, 603.0),
    nt_range: (402.5, 627.6),
    rs_upper: 673.7,
};

pub fn afeswr_catalog() -> AfeswrReference {
    AFESWR_REFERENCE
}

impl AfeswrReference {
    /// Predicted Raman window for the main σ-polaron mode: `(tpa_lo, rs_upper)`.
    pub fn raman_window(&self) -> (f64, f64) {
        (self.tpa_range.0, self.rs_upper)
    }
}
