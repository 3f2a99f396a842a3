//! Resonant continuum limit of the lattice equations.
//!
//! With the gauge `Φ_A = e^{i(ω₀t − kx)/2} e^{λt/2} A`,
//! `Φ_B = e^{−i(ω₀t − kx)/2} e^{λt/2} B` and the nearest-neighbor sum
//! expanded to second order in `a`, each spatial frequency `h` and chain
//! mode `q` evolves independently under
//!
//! ```text
//! d/dt (Φ̂_A, Φ̂_B) = i [[λ₁_q s₁, −G], [−G, λ₂_q s₂]] (Φ̂_A, Φ̂_B)
//! s₁ = 2 − a²(h + k/2)²,  s₂ = 2 − a²(h − k/2)²
//! ```
//!
//! which is solved in closed form. Fields are rebuilt with
//! `Φ(x) = ∫ Φ̂(h) e^{ihx} dh` on a uniform `h` grid (trapezoid rule).

use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::PI;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hypercomplex::{chain_modes, chain_modes_inverse};
use crate::C64;

use super::config::SystemConfig;
use super::field::{AmplitudeField, ChainSelect, GaussianPacket};
use super::hamiltonian::build_hamiltonian;
use super::inversion::InversionTrace;

/// Largest detuning treated as resonant, relative to `max(|ω₀|, 1)`.
pub const RESONANCE_TOLERANCE: f64 = 1e-12;

/// Gauge-transformed spectral amplitudes `Φ̂_A(h)`, `Φ̂_B(h)` per chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuumSpectrum {
    /// Uniform, increasing grid of spatial frequencies.
    pub h: Vec<f64>,
    /// `excited[j][i]` is `Φ̂_A` of chain `j` at `h[i]`.
    pub excited: Vec<Vec<C64>>,
    pub ground: Vec<Vec<C64>>,
}

impl ContinuumSpectrum {
    pub fn n_chains(&self) -> usize {
        self.excited.len()
    }

    fn step(&self) -> f64 {
        if self.h.len() < 2 {
            0.0
        } else {
            self.h[1] - self.h[0]
        }
    }

    fn validate(&self) -> Result<()> {
        if self.h.len() < 2 {
            return Err(Error::InvalidDimension("spectral grid needs at least two points"));
        }
        let dh = self.step();
        if !(dh > 0.0) || self.h.windows(2).any(|w| ((w[1] - w[0]) - dh).abs() > 1e-9 * dh) {
            return Err(Error::InvalidParameter("spectral grid must be uniform and increasing"));
        }
        if self.excited.is_empty() || self.excited.len() != self.ground.len() {
            return Err(Error::DimensionMismatch { expected: self.excited.len(), found: self.ground.len() });
        }
        for row in self.excited.iter().chain(&self.ground) {
            if row.len() != self.h.len() {
                return Err(Error::DimensionMismatch { expected: self.h.len(), found: row.len() });
            }
        }
        Ok(())
    }

    /// `Φ_A(x)`, `Φ_B(x)` per chain.
    pub fn amplitudes_at(&self, x: f64) -> (Vec<C64>, Vec<C64>) {
        let dh = self.step();
        let last = self.h.len().saturating_sub(1);
        let kernel: Vec<C64> = self
            .h
            .iter()
            .enumerate()
            .map(|(i, &h)| {
                let w = if i == 0 || i == last { 0.5 * dh } else { dh };
                C64::from_polar(w, h * x)
            })
            .collect();
        let integrate = |rows: &[Vec<C64>]| -> Vec<C64> {
            rows.iter().map(|row| row.iter().zip(&kernel).map(|(f, k)| f * k).sum()).collect()
        };
        (integrate(&self.excited), integrate(&self.ground))
    }

    /// `(2π/a) ∫ (|Φ̂_A|² − |Φ̂_B|²) dh` per chain, which equals
    /// `(1/a) ∫ (|Φ_A|² − |Φ_B|²) dx`.
    pub fn inversion_per_chain(&self, a: f64) -> Vec<f64> {
        let dh = self.step();
        let last = self.h.len().saturating_sub(1);
        self.excited
            .iter()
            .zip(&self.ground)
            .map(|(ex, gr)| {
                let s: f64 = ex
                    .iter()
                    .zip(gr)
                    .enumerate()
                    .map(|(i, (p, q))| {
                        let w = if i == 0 || i == last { 0.5 } else { 1.0 };
                        w * (p.norm_sqr() - q.norm_sqr())
                    })
                    .sum();
                2.0 * PI * dh * s / a
            })
            .collect()
    }

    /// `(2π/a) ∫ (|Φ̂_A|² + |Φ̂_B|²) dh` summed over chains.
    pub fn norm(&self, a: f64) -> f64 {
        let dh = self.step();
        let last = self.h.len().saturating_sub(1);
        let s: f64 = self
            .excited
            .iter()
            .chain(&self.ground)
            .flat_map(|row| row.iter().enumerate())
            .map(|(i, z)| if i == 0 || i == last { 0.5 * z.norm_sqr() } else { z.norm_sqr() })
            .sum();
        2.0 * PI * dh * s / a
    }
}

/// Spectral grid points such that the periodic images of the trapezoid
/// rule lie at least `4Na` apart.
pub fn recommended_points(cfg: &SystemConfig, packet: &GaussianPacket) -> usize {
    let span = 16.0 / (packet.width * cfg.a);
    let period = 4.0 * cfg.n_sites as f64 * cfg.a;
    ((span * period / (2.0 * PI)).ceil() as usize + 1).max(64)
}

/// Spectrum of [`AmplitudeField::gaussian`] in the continuum, on `n_h`
/// points spanning `±8/(σa)` around the packet's gauge-shifted carrier.
///
/// The per-chain amplitude is normalized so that one packet carries unit
/// norm on the infinite line; with [`ChainSelect::All`] the total is
/// rescaled to one.
pub fn gaussian_spectrum(cfg: &SystemConfig, packet: &GaussianPacket, n_h: usize) -> Result<ContinuumSpectrum> {
    cfg.validate()?;
    if !(packet.width > 0.0) {
        return Err(Error::InvalidParameter("packet width must be > 0"));
    }
    if n_h < 2 {
        return Err(Error::InvalidDimension("spectral grid needs at least two points"));
    }
    let chains: Vec<usize> = match packet.chain {
        ChainSelect::One(j) if j < cfg.n_chains => vec![j],
        ChainSelect::One(_) => return Err(Error::InvalidParameter("packet chain out of range")),
        ChainSelect::All => (0..cfg.n_chains).collect(),
    };
    let sigma_x = packet.width * cfg.a;
    let x0 = packet.center * cfg.a;
    let center = packet.k0 - 0.5 * cfg.k_wave;
    let half = 8.0 / sigma_x;
    let dh = 2.0 * half / (n_h - 1) as f64;
    let h: Vec<f64> = (0..n_h).map(|i| center - half + i as f64 * dh).collect();

    let c = (packet.width * (2.0 * PI).sqrt()).powf(-0.5) / (chains.len() as f64).sqrt();
    let prefactor = c / (2.0 * PI) * 2.0 * sigma_x * PI.sqrt();
    let row: Vec<C64> = h
        .iter()
        .map(|&hv| {
            let kappa = hv - center;
            C64::from_polar(prefactor * (-sigma_x * sigma_x * kappa * kappa).exp(), -kappa * x0)
        })
        .collect();
    let mut excited = vec![vec![C64::zero(); n_h]; cfg.n_chains];
    for &j in &chains {
        excited[j] = row.clone();
    }
    Ok(ContinuumSpectrum { h, excited, ground: vec![vec![C64::zero(); n_h]; cfg.n_chains] })
}

/// Closed-form resonant evolution of a continuum spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuumSolution {
    initial: ContinuumSpectrum,
    /// Initial amplitudes in chain modes, `[q][i]`.
    modes_a: Vec<Vec<C64>>,
    modes_b: Vec<Vec<C64>>,
    lambda1: Vec<f64>,
    lambda2: Vec<f64>,
    coupling: f64,
    decay: f64,
    omega0: f64,
    k_wave: f64,
    a: f64,
    t0: f64,
}

/// Physical state at one time: the gauge-transformed spectrum plus what
/// is needed to undo the gauge.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuumState {
    pub t: f64,
    pub spectrum: ContinuumSpectrum,
    decay: f64,
    omega0: f64,
    k_wave: f64,
    a: f64,
    t0: f64,
}

/// Sets up the closed-form solution with `spectrum` given at time `t0`.
pub fn evolve_continuum(cfg: &SystemConfig, spectrum: &ContinuumSpectrum, t0: f64) -> Result<ContinuumSolution> {
    let spec = build_hamiltonian(cfg)?;
    spectrum.validate()?;
    if spectrum.n_chains() != cfg.n_chains {
        return Err(Error::DimensionMismatch { expected: cfg.n_chains, found: spectrum.n_chains() });
    }
    if spec.detuning().abs() > RESONANCE_TOLERANCE * cfg.omega0.abs().max(1.0) {
        return Err(Error::UnsupportedRegime("continuum solution requires omega == omega0"));
    }
    let (lambda1, lambda2) = spec.hopping.chain_eigenvalues();
    let n_h = spectrum.h.len();
    let to_modes = |rows: &[Vec<C64>]| -> Vec<Vec<C64>> {
        let mut out = vec![vec![C64::zero(); n_h]; cfg.n_chains];
        let mut column = vec![C64::zero(); cfg.n_chains];
        for i in 0..n_h {
            for (j, row) in rows.iter().enumerate() {
                column[j] = row[i];
            }
            for (q, z) in chain_modes(&column).into_iter().enumerate() {
                out[q][i] = z;
            }
        }
        out
    };
    Ok(ContinuumSolution {
        modes_a: to_modes(&spectrum.excited),
        modes_b: to_modes(&spectrum.ground),
        initial: spectrum.clone(),
        lambda1,
        lambda2,
        coupling: spec.interaction.coupling(),
        decay: cfg.lambda,
        omega0: cfg.omega0,
        k_wave: cfg.k_wave,
        a: cfg.a,
        t0,
    })
}

/// `exp(iMτ)` for real symmetric `M = [[p, −G], [−G, r]]`, as
/// `[[m00, m01], [m01, m11]]`.
fn propagator(p: f64, r: f64, g: f64, tau: f64) -> (C64, C64, C64) {
    let mean = 0.5 * (p + r);
    let half_diff = 0.5 * (p - r);
    let omega = half_diff.hypot(g);
    let (s, c) = (omega * tau).sin_cos();
    let sinc = if omega * tau.abs() < 1e-300 { tau } else { s / omega };
    let global = C64::from_polar(1.0, mean * tau);
    let i = C64::i();
    (global * (c + i * sinc * half_diff), global * (-i * sinc * g), global * (c - i * sinc * half_diff))
}

impl ContinuumSolution {
    pub fn initial(&self) -> &ContinuumSpectrum {
        &self.initial
    }

    pub fn state_at(&self, t: f64) -> ContinuumState {
        let tau = t - self.t0;
        let n = self.lambda1.len();
        let n_h = self.initial.h.len();
        let mut ex_modes = vec![vec![C64::zero(); n_h]; n];
        let mut gr_modes = vec![vec![C64::zero(); n_h]; n];
        for q in 0..n {
            for (i, &h) in self.initial.h.iter().enumerate() {
                let s1 = 2.0 - (self.a * (h + 0.5 * self.k_wave)).powi(2);
                let s2 = 2.0 - (self.a * (h - 0.5 * self.k_wave)).powi(2);
                let (m00, m01, m11) = propagator(self.lambda1[q] * s1, self.lambda2[q] * s2, self.coupling, tau);
                let (xa, xb) = (self.modes_a[q][i], self.modes_b[q][i]);
                ex_modes[q][i] = m00 * xa + m01 * xb;
                gr_modes[q][i] = m01 * xa + m11 * xb;
            }
        }
        let from_modes = |modes: &[Vec<C64>]| -> Vec<Vec<C64>> {
            let mut out = vec![vec![C64::zero(); n_h]; n];
            let mut column = vec![C64::zero(); n];
            for i in 0..n_h {
                for (q, row) in modes.iter().enumerate() {
                    column[q] = row[i];
                }
                for (j, z) in chain_modes_inverse(&column).into_iter().enumerate() {
                    out[j][i] = z;
                }
            }
            out
        };
        ContinuumState {
            t,
            spectrum: ContinuumSpectrum {
                h: self.initial.h.clone(),
                excited: from_modes(&ex_modes),
                ground: from_modes(&gr_modes),
            },
            decay: self.decay,
            omega0: self.omega0,
            k_wave: self.k_wave,
            a: self.a,
            t0: self.t0,
        }
    }

    /// Inversion history at the given times.
    pub fn inversion_trace(&self, times: &[f64]) -> InversionTrace {
        let mut trace = InversionTrace::new(self.lambda1.len());
        for &t in times {
            let state = self.state_at(t);
            trace.push(t, &state.inversion_per_chain(), state.norm()).expect("chain count fixed by the solution");
        }
        trace
    }
}

impl ContinuumState {
    fn damping(&self) -> f64 {
        (-0.5 * self.decay * (self.t - self.t0)).exp()
    }

    /// Physical `A(x)`, `B(x)` per chain.
    pub fn amplitudes_at(&self, x: f64) -> (Vec<C64>, Vec<C64>) {
        let (pa, pb) = self.spectrum.amplitudes_at(x);
        let gauge = C64::from_polar(self.damping(), 0.5 * (self.k_wave * x - self.omega0 * self.t));
        let gauge_b = C64::from_polar(self.damping(), -0.5 * (self.k_wave * x - self.omega0 * self.t));
        (pa.into_iter().map(|z| z * gauge).collect(), pb.into_iter().map(|z| z * gauge_b).collect())
    }

    /// Samples the physical amplitudes at the sites `x = m·a`.
    pub fn sample_lattice(&self, n_sites: usize) -> Result<AmplitudeField> {
        let n = self.spectrum.n_chains();
        let mut f = AmplitudeField::zeros(n_sites, n)?;
        f.t = self.t;
        for m in 0..n_sites {
            let (ea, gb) = self.amplitudes_at(m as f64 * self.a);
            for j in 0..n {
                f.excited[m * n + j] = ea[j];
                f.ground[m * n + j] = gb[j];
            }
        }
        Ok(f)
    }

    /// `W_j = (1/a) ∫ (|A_j|² − |B_j|²) dx`.
    pub fn inversion_per_chain(&self) -> Vec<f64> {
        let d2 = self.damping().powi(2);
        self.spectrum.inversion_per_chain(self.a).into_iter().map(|w| w * d2).collect()
    }

    pub fn inversion(&self) -> f64 {
        self.inversion_per_chain().iter().sum()
    }

    pub fn norm(&self) -> f64 {
        self.damping().powi(2) * self.spectrum.norm(self.a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rabi_dynamics::config::Boundary;

    fn cfg(n_chains: usize, xi1: Vec<f64>, xi2: Vec<f64>) -> SystemConfig {
        SystemConfig {
            n_chains,
            n_sites: 64,
            omega0: 1.0,
            omega: 1.0,
            g: 0.05,
            lambda: 0.0,
            l_photons: 0,
            k_wave: 0.1,
            a: 1.0,
            xi1,
            xi2,
            boundary: Boundary::Periodic,
        }
    }

    fn packet(chain: ChainSelect) -> GaussianPacket {
        GaussianPacket { chain, center: 32.0, width: 4.0, k0: 0.2 }
    }

    #[test]
    fn initial_spectrum_matches_lattice_packet() {
        let c = cfg(1, vec![0.0], vec![0.0]);
        let p = packet(ChainSelect::One(0));
        let spec = gaussian_spectrum(&c, &p, recommended_points(&c, &p)).unwrap();
        assert!((spec.norm(c.a) - 1.0).abs() < 1e-10);
        let sol = evolve_continuum(&c, &spec, 0.0).unwrap();
        let sampled = sol.state_at(0.0).sample_lattice(c.n_sites).unwrap();
        let lattice = AmplitudeField::gaussian(&c, &p).unwrap();
        assert!(sampled.max_abs_diff(&lattice).unwrap() < 1e-10);
    }

    #[test]
    fn no_hopping_gives_uniform_rabi() {
        let c = cfg(2, vec![0.0; 2], vec![0.0; 2]);
        let p = packet(ChainSelect::All);
        let spec = gaussian_spectrum(&c, &p, 257).unwrap();
        let sol = evolve_continuum(&c, &spec, 0.0).unwrap();
        let times: Vec<f64> = (0..50).map(|i| i as f64 * 1.7).collect();
        let tr = sol.inversion_trace(&times);
        for (t, w) in tr.times.iter().zip(&tr.w_total) {
            assert!((w - (c.rabi_frequency() * t).cos()).abs() < 1e-10);
        }
    }

    #[test]
    fn decay_and_norm() {
        let mut c = cfg(3, vec![0.1, 0.02, 0.02], vec![0.05, 0.01, 0.01]);
        c.lambda = 0.01;
        let p = packet(ChainSelect::One(1));
        let spec = gaussian_spectrum(&c, &p, 301).unwrap();
        let sol = evolve_continuum(&c, &spec, 0.0).unwrap();
        for t in [0.0, 10.0, 55.0] {
            let st = sol.state_at(t);
            assert!((st.norm() - (-c.lambda * t).exp()).abs() < 1e-9);
            assert!(st.inversion().abs() <= st.norm() + 1e-12);
        }
    }

    #[test]
    fn propagator_is_unitary() {
        for (p, r, g, tau) in [(0.3, -0.1, 0.2, 4.0), (0.0, 0.0, 0.0, 2.0), (1.0, 1.0, 0.0, 3.0)] {
            let (a, b, d) = propagator(p, r, g, tau);
            assert!((a.norm_sqr() + b.norm_sqr() - 1.0).abs() < 1e-14);
            assert!((b.norm_sqr() + d.norm_sqr() - 1.0).abs() < 1e-14);
            assert!((a * b.conj() + b * d.conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn off_resonance_is_rejected() {
        let mut c = cfg(1, vec![0.0], vec![0.0]);
        let spec = gaussian_spectrum(&c, &packet(ChainSelect::One(0)), 64).unwrap();
        c.omega = 1.01;
        assert!(matches!(evolve_continuum(&c, &spec, 0.0), Err(Error::UnsupportedRegime(_))));
    }
}
