use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypercomplex::CirculantMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    /// Ring: site `N−1` neighbors site `0`.
    #[default]
    Periodic,
    /// Amplitudes outside `0..N` are zero.
    Open,
}

/// Full multichain qubit–field system (units with ħ = 1; all rates in
/// rad/time).
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    pub n_chains: usize,
    pub n_sites: usize,
    /// Qubit transition frequency `ω₀`.
    pub omega0: f64,
    /// Field mode frequency `ω`.
    pub omega: f64,
    /// Qubit–field coupling `g ≥ 0`.
    pub g: f64,
    /// Relaxation rate `λ ≥ 0`; the norm decays as `e^{−λt}`.
    pub lambda: f64,
    /// Photon number `l` of the manifold.
    pub l_photons: u32,
    /// Field wavevector `k`.
    pub k_wave: f64,
    /// Site spacing `a`.
    pub a: f64,
    /// Excited-state couplings by chain separation, `xi1[0]` intrachain.
    pub xi1: Vec<f64>,
    /// Ground-state couplings by chain separation.
    pub xi2: Vec<f64>,
    pub boundary: Boundary,
}

impl SystemConfig {
    /// Single chain, single site, no hopping: the Jaynes–Cummings limit.
    pub fn jaynes_cummings(omega0: f64, g: f64, l_photons: u32) -> Self {
        Self {
            n_chains: 1,
            n_sites: 1,
            omega0,
            omega: omega0,
            g,
            lambda: 0.0,
            l_photons,
            k_wave: 0.0,
            a: 1.0,
            xi1: alloc::vec![0.0],
            xi2: alloc::vec![0.0],
            boundary: Boundary::Periodic,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_chains == 0 {
            return Err(Error::InvalidParameter("n_chains must be >= 1"));
        }
        if self.n_sites == 0 {
            return Err(Error::InvalidParameter("n_sites must be >= 1"));
        }
        if !(self.g >= 0.0) || !self.g.is_finite() {
            return Err(Error::InvalidParameter("g must be finite and >= 0"));
        }
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(Error::InvalidParameter("lambda must be finite and >= 0"));
        }
        if !(self.a > 0.0) {
            return Err(Error::InvalidParameter("site spacing a must be > 0"));
        }
        if !self.omega0.is_finite() || !self.omega.is_finite() || !self.k_wave.is_finite() {
            return Err(Error::InvalidParameter("omega0, omega and k_wave must be finite"));
        }
        for xi in [&self.xi1, &self.xi2] {
            if xi.len() != self.n_chains {
                return Err(Error::InvalidParameter("xi1 and xi2 need one entry per chain separation"));
            }
            if xi.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidParameter("couplings must be finite"));
            }
            let n = xi.len();
            if (1..n).any(|r| xi[r] != xi[n - r]) {
                return Err(Error::InvalidParameter(
                    "chain couplings must satisfy xi[r] == xi[n - r] (Hermitian circulant)",
                ));
            }
        }
        Ok(())
    }

    /// `G = g√(l+1)`.
    pub fn rabi_coupling(&self) -> f64 {
        self.g * ((self.l_photons as f64) + 1.0).sqrt()
    }

    /// Vacuum-manifold Rabi angular frequency `2g√(l+1)` of a single qubit.
    pub fn rabi_frequency(&self) -> f64 {
        2.0 * self.rabi_coupling()
    }

    pub fn detuning(&self) -> f64 {
        self.omega - self.omega0
    }

    pub fn xi1_matrix(&self) -> Result<CirculantMatrix> {
        CirculantMatrix::from_real(&self.xi1)
    }

    pub fn xi2_matrix(&self) -> Result<CirculantMatrix> {
        CirculantMatrix::from_real(&self.xi2)
    }

    pub fn n_amplitudes(&self) -> usize {
        self.n_chains * self.n_sites
    }
}
