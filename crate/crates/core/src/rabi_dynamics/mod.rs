//! Multichain qubit–field dynamics in a fixed photon manifold.
//!
//! Each site `m` of chain `j` carries a two-level system. In photon manifold
//! `l` the field couples `|a_mj, l⟩` (amplitude `A`) to `|b_mj, l+1⟩`
//! (amplitude `B`) with strength `G = g√(l+1)`. In the interaction picture
//! with respect to the free field the amplitudes obey
//!
//! ```text
//! dΨ_m/dt = {−(i/2)ω₀σ_z − (λ/2) − iG σ_x exp(iσ_z(ωt − kma))} Ψ_m
//!           + i[ξ](Ψ_{m−1} + Ψ_{m+1})
//! [ξ] = ½([ξ₁]+[ξ₂]) ⊗ I₂ + ½([ξ₁]−[ξ₂]) ⊗ σ_z
//! ```
//!
//! where `[ξ₁]`, `[ξ₂]` are circulant chain-coupling matrices acting on the
//! excited and ground amplitudes respectively.
//!
//! [`evolve_lattice`] integrates this system; [`evolve_continuum`] evaluates
//! the long-wavelength solution at resonance through the circulant
//! eigenbasis.

mod config;
mod continuum;
mod field;
mod hamiltonian;
mod inversion;
mod lattice;

pub use config::{Boundary, SystemConfig};
pub use continuum::{
    evolve_continuum, gaussian_spectrum, recommended_points, ContinuumSolution, ContinuumSpectrum, ContinuumState,
    RESONANCE_TOLERANCE,
};
pub use field::{AmplitudeField, ChainSelect, GaussianPacket};
pub use hamiltonian::{build_hamiltonian, FieldTerm, Frame, HamiltonianSpec, HoppingTerm, InteractionTerm, QubitTerm};
pub use inversion::{inversion_of, DensitySnapshot, InversionTrace};
pub use lattice::{evolve_lattice, LatticeOutcome, LatticeRun, NORM_FAILURE_THRESHOLD};
