use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::C64;

use super::config::SystemConfig;

/// Amplitudes `A_{m,j}` (excited, `l` photons) and `B_{m,j}` (ground,
/// `l+1` photons) at time `t`, stored site-major: index `m·n_chains + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeField {
    n_sites: usize,
    n_chains: usize,
    pub excited: Vec<C64>,
    pub ground: Vec<C64>,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainSelect {
    One(usize),
    /// Same packet on every chain.
    All,
}

/// `A(m) ∝ exp(−(m − m₀)²/4σ²) e^{ik₀ma}` on the selected chains, `B = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket {
    pub chain: ChainSelect,
    /// Center `m₀` in site units.
    pub center: f64,
    /// Width `σ` in site units (of the density).
    pub width: f64,
    /// Carrier wavevector `k₀`.
    pub k0: f64,
}

impl AmplitudeField {
    pub fn zeros(n_sites: usize, n_chains: usize) -> Result<Self> {
        if n_sites == 0 || n_chains == 0 {
            return Err(Error::InvalidDimension("field needs at least one site and chain"));
        }
        let len = n_sites * n_chains;
        Ok(Self { n_sites, n_chains, excited: vec![C64::zero(); len], ground: vec![C64::zero(); len], t: 0.0 })
    }

    pub fn from_parts(n_sites: usize, n_chains: usize, excited: Vec<C64>, ground: Vec<C64>, t: f64) -> Result<Self> {
        let len = n_sites * n_chains;
        if len == 0 {
            return Err(Error::InvalidDimension("field needs at least one site and chain"));
        }
        for v in [&excited, &ground] {
            if v.len() != len {
                return Err(Error::DimensionMismatch { expected: len, found: v.len() });
            }
        }
        Ok(Self { n_sites, n_chains, excited, ground, t })
    }

    pub fn for_config(cfg: &SystemConfig) -> Result<Self> {
        Self::zeros(cfg.n_sites, cfg.n_chains)
    }

    /// Normalized Gaussian excited-state packet.
    pub fn gaussian(cfg: &SystemConfig, packet: &GaussianPacket) -> Result<Self> {
        if !(packet.width > 0.0) {
            return Err(Error::InvalidParameter("packet width must be > 0"));
        }
        let mut f = Self::for_config(cfg)?;
        let chains: Vec<usize> = match packet.chain {
            ChainSelect::One(j) if j < cfg.n_chains => vec![j],
            ChainSelect::One(_) => return Err(Error::InvalidParameter("packet chain out of range")),
            ChainSelect::All => (0..cfg.n_chains).collect(),
        };
        for m in 0..cfg.n_sites {
            let d = m as f64 - packet.center;
            let env = (-d * d / (4.0 * packet.width * packet.width)).exp();
            let phase = packet.k0 * m as f64 * cfg.a;
            let amp = C64::from_polar(env, phase);
            for &j in &chains {
                f.excited[m * cfg.n_chains + j] = amp;
            }
        }
        f.normalize()?;
        Ok(f)
    }

    /// All weight on the excited state of one site.
    pub fn excited_site(cfg: &SystemConfig, site: usize, chain: usize) -> Result<Self> {
        let mut f = Self::for_config(cfg)?;
        if site >= cfg.n_sites || chain >= cfg.n_chains {
            return Err(Error::InvalidParameter("site or chain out of range"));
        }
        f.excited[site * cfg.n_chains + chain] = C64::new(1.0, 0.0);
        Ok(f)
    }

    /// All weight on the ground state (manifold `l+1`) of one site.
    pub fn ground_site(cfg: &SystemConfig, site: usize, chain: usize) -> Result<Self> {
        let mut f = Self::for_config(cfg)?;
        if site >= cfg.n_sites || chain >= cfg.n_chains {
            return Err(Error::InvalidParameter("site or chain out of range"));
        }
        f.ground[site * cfg.n_chains + chain] = C64::new(1.0, 0.0);
        Ok(f)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn n_chains(&self) -> usize {
        self.n_chains
    }

    pub fn index(&self, m: usize, j: usize) -> usize {
        m * self.n_chains + j
    }

    pub fn norm(&self) -> f64 {
        self.excited.iter().chain(&self.ground).map(|z| z.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm();
        if !(n > 0.0) {
            return Err(Error::InvalidParameter("cannot normalize a zero field"));
        }
        let s = 1.0 / n.sqrt();
        for z in self.excited.iter_mut().chain(self.ground.iter_mut()) {
            *z *= s;
        }
        Ok(())
    }

    /// `W_j = Σ_m |A_{mj}|² − |B_{mj}|²` for every chain.
    pub fn inversion_per_chain(&self) -> Vec<f64> {
        let mut w = vec![0.0; self.n_chains];
        for (i, (a, b)) in self.excited.iter().zip(&self.ground).enumerate() {
            w[i % self.n_chains] += a.norm_sqr() - b.norm_sqr();
        }
        w
    }

    pub fn inversion(&self) -> f64 {
        self.inversion_per_chain().iter().sum()
    }

    /// `(|A|², |B|²)` per amplitude, site-major.
    pub fn densities(&self) -> (Vec<f64>, Vec<f64>) {
        (self.excited.iter().map(|z| z.norm_sqr()).collect(), self.ground.iter().map(|z| z.norm_sqr()).collect())
    }

    /// Relabels chains `j → (j + shift) mod n`.
    pub fn rotate_chains(&self, shift: usize) -> Self {
        let n = self.n_chains;
        let mut out = self.clone();
        for m in 0..self.n_sites {
            for j in 0..n {
                let dst = m * n + (j + shift) % n;
                out.excited[dst] = self.excited[m * n + j];
                out.ground[dst] = self.ground[m * n + j];
            }
        }
        out
    }

    /// Moves every site `m → (m + shift) mod N`.
    pub fn translate_sites(&self, shift: usize) -> Self {
        let (ns, n) = (self.n_sites, self.n_chains);
        let mut out = self.clone();
        for m in 0..ns {
            for j in 0..n {
                let dst = ((m + shift) % ns) * n + j;
                out.excited[dst] = self.excited[m * n + j];
                out.ground[dst] = self.ground[m * n + j];
            }
        }
        out
    }

    /// Largest amplitude difference between two fields of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.excited.len() != other.excited.len() {
            return Err(Error::DimensionMismatch { expected: self.excited.len(), found: other.excited.len() });
        }
        Ok(self
            .excited
            .iter()
            .zip(&other.excited)
            .chain(self.ground.iter().zip(&other.ground))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SystemConfig {
        SystemConfig {
            n_sites: 32,
            n_chains: 2,
            xi1: vec![0.0, 0.0],
            xi2: vec![0.0, 0.0],
            ..SystemConfig::jaynes_cummings(1.0, 0.1, 0)
        }
    }

    #[test]
    fn gaussian_is_normalized_and_excited() {
        let f = AmplitudeField::gaussian(
            &cfg(),
            &GaussianPacket { chain: ChainSelect::One(1), center: 15.5, width: 3.0, k0: 0.4 },
        )
        .unwrap();
        assert!((f.norm() - 1.0).abs() < 1e-14);
        assert!((f.inversion() - 1.0).abs() < 1e-14);
        assert_eq!(f.inversion_per_chain()[0], 0.0);
    }

    #[test]
    fn ground_site_inversion() {
        let f = AmplitudeField::ground_site(&cfg(), 3, 0).unwrap();
        assert_eq!(f.inversion(), -1.0);
        assert!(AmplitudeField::ground_site(&cfg(), 32, 0).is_err());
    }

    #[test]
    fn relabeling() {
        let f = AmplitudeField::excited_site(&cfg(), 31, 1).unwrap();
        let g = f.rotate_chains(1).translate_sites(2);
        assert_eq!(g.excited[g.index(1, 0)], C64::new(1.0, 0.0));
        assert_eq!(g.norm(), 1.0);
    }

    #[test]
    fn shape_checks() {
        assert!(AmplitudeField::from_parts(2, 2, vec![C64::zero(); 4], vec![C64::zero(); 3], 0.0).is_err());
        assert!(AmplitudeField::zeros(0, 1).is_err());
        let mut z = AmplitudeField::zeros(2, 1).unwrap();
        assert!(z.normalize().is_err());
    }
}
