use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Result;
use crate::hypercomplex::CirculantMatrix;
use crate::C64;

use super::config::{Boundary, SystemConfig};

/// `(ω₀/2) Σ σ^z_{mj}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitTerm {
    pub omega0: f64,
}

/// `ω a†a`; only enters through the interaction picture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldTerm {
    pub omega: f64,
}

/// `g Σ (σ⁺_{mj} a e^{ikma} + h.c.)` in the rotating-wave approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionTerm {
    pub g: f64,
    pub k_wave: f64,
    pub a: f64,
    /// `√(l+1)`: matrix element of `a` between `|l+1⟩` and `|l⟩`.
    pub photon_factor: f64,
}

impl InteractionTerm {
    pub fn coupling(&self) -> f64 {
        self.g * self.photon_factor
    }
}

/// Nearest-site hopping with circulant chain coupling, `−Σ [ξ]` on both
/// neighbors.
#[derive(Debug, Clone, PartialEq)]
pub struct HoppingTerm {
    /// Acts on excited amplitudes.
    pub xi1: CirculantMatrix,
    /// Acts on ground amplitudes.
    pub xi2: CirculantMatrix,
}

impl HoppingTerm {
    /// Chain-mode spectra `(λ₁_q, λ₂_q)`; real for ring-symmetric couplings.
    pub fn chain_eigenvalues(&self) -> (Vec<f64>, Vec<f64>) {
        (self.xi1.eigenvalues().iter().map(|z| z.re).collect(), self.xi2.eigenvalues().iter().map(|z| z.re).collect())
    }

    /// `[ξ]` as the `2n × 2n` block matrix
    /// `½(ξ₁+ξ₂)⊗I₂ + ½(ξ₁−ξ₂)⊗σ_z`, with the chain index outer and the
    /// qubit index inner. Row-major.
    pub fn block_matrix(&self) -> Vec<C64> {
        let n = self.xi1.n();
        let dim = 2 * n;
        let mut out = vec![C64::zero(); dim * dim];
        for i in 0..n {
            for k in 0..n {
                let s = 0.5 * (self.xi1.get(i, k) + self.xi2.get(i, k));
                let d = 0.5 * (self.xi1.get(i, k) - self.xi2.get(i, k));
                out[(2 * i) * dim + 2 * k] = s + d;
                out[(2 * i + 1) * dim + 2 * k + 1] = s - d;
            }
        }
        out
    }
}

/// Which picture a dense generator is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// Interaction picture with respect to the free field only.
    Interaction,
    /// Additionally rotating at `ω₀/2` so the qubit term drops out.
    Rotating,
}

/// Assembled four-part Hamiltonian of the chain–field system.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    pub n_chains: usize,
    pub n_sites: usize,
    pub lambda: f64,
    pub boundary: Boundary,
    pub qubit: QubitTerm,
    pub field: FieldTerm,
    pub interaction: InteractionTerm,
    pub hopping: HoppingTerm,
}

pub fn build_hamiltonian(cfg: &SystemConfig) -> Result<HamiltonianSpec> {
    cfg.validate()?;
    Ok(HamiltonianSpec {
        n_chains: cfg.n_chains,
        n_sites: cfg.n_sites,
        lambda: cfg.lambda,
        boundary: cfg.boundary,
        qubit: QubitTerm { omega0: cfg.omega0 },
        field: FieldTerm { omega: cfg.omega },
        interaction: InteractionTerm {
            g: cfg.g,
            k_wave: cfg.k_wave,
            a: cfg.a,
            photon_factor: ((cfg.l_photons as f64) + 1.0).sqrt(),
        },
        hopping: HoppingTerm { xi1: cfg.xi1_matrix()?, xi2: cfg.xi2_matrix()? },
    })
}

impl HamiltonianSpec {
    pub fn dim(&self) -> usize {
        2 * self.n_sites * self.n_chains
    }

    pub fn detuning(&self) -> f64 {
        self.field.omega - self.qubit.omega0
    }

    /// Upper bound on the modulus of any eigenvalue of the generator in the
    /// given frame (including the decay rate).
    pub fn max_rate(&self, frame: Frame) -> f64 {
        let row_sum = |c: &CirculantMatrix| c.first_row().iter().map(|z| z.norm()).sum::<f64>();
        let hop = 2.0 * row_sum(&self.hopping.xi1).max(row_sum(&self.hopping.xi2));
        let local = match frame {
            Frame::Interaction => 0.5 * self.qubit.omega0.abs(),
            Frame::Rotating => 0.0,
        };
        local + self.interaction.coupling() + hop + 0.5 * self.lambda
    }

    /// Neighbor sites of `m` (each listed once per bond; a ring of one or two
    /// sites lists the same neighbor twice).
    pub fn neighbors(&self, m: usize) -> [Option<usize>; 2] {
        let n = self.n_sites;
        match self.boundary {
            Boundary::Periodic => [Some((m + n - 1) % n), Some((m + 1) % n)],
            Boundary::Open => [m.checked_sub(1), if m + 1 < n { Some(m + 1) } else { None }],
        }
    }

    /// Dense Hermitian matrix `H(t)` with `dΨ/dt = −iHΨ − (λ/2)Ψ`. The basis
    /// is `[A(m,j)…, B(m,j)…]`, site-major within each block.
    pub fn dense_matrix(&self, t: f64, frame: Frame) -> Vec<C64> {
        let n = self.n_chains;
        let half = self.n_sites * n;
        let dim = 2 * half;
        let mut h = vec![C64::zero(); dim * dim];
        let big_g = self.interaction.coupling();
        let (local, drive_freq) = match frame {
            Frame::Interaction => (0.5 * self.qubit.omega0, self.field.omega),
            Frame::Rotating => (0.0, self.detuning()),
        };
        for m in 0..self.n_sites {
            let phase = drive_freq * t - self.interaction.k_wave * m as f64 * self.interaction.a;
            for j in 0..n {
                let ia = m * n + j;
                let ib = half + ia;
                h[ia * dim + ia] += C64::new(local, 0.0);
                h[ib * dim + ib] -= C64::new(local, 0.0);
                h[ia * dim + ib] += C64::from_polar(big_g, -phase);
                h[ib * dim + ia] += C64::from_polar(big_g, phase);
                for nb in self.neighbors(m).into_iter().flatten() {
                    for jp in 0..n {
                        let ja = nb * n + jp;
                        h[ia * dim + ja] -= self.hopping.xi1.get(j, jp);
                        h[ib * dim + half + ja] -= self.hopping.xi2.get(j, jp);
                    }
                }
            }
        }
        h
    }
}
