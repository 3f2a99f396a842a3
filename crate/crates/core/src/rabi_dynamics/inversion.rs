use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::field::AmplitudeField;

/// Site densities `|A|²`, `|B|²` (site-major) at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySnapshot {
    pub t: f64,
    pub excited: Vec<f64>,
    pub ground: Vec<f64>,
}

/// Integral inversion history.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InversionTrace {
    pub times: Vec<f64>,
    pub w_total: Vec<f64>,
    /// `w_per_chain[j][i]` is `W_j(times[i])`.
    pub w_per_chain: Vec<Vec<f64>>,
    /// Total norm at each recorded time.
    pub norm: Vec<f64>,
    pub snapshots: Vec<DensitySnapshot>,
}

impl InversionTrace {
    pub fn new(n_chains: usize) -> Self {
        Self { w_per_chain: vec![Vec::new(); n_chains], ..Self::default() }
    }

    pub fn n_chains(&self) -> usize {
        self.w_per_chain.len()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn push(&mut self, t: f64, per_chain: &[f64], norm: f64) -> Result<()> {
        if per_chain.len() != self.n_chains() {
            return Err(Error::DimensionMismatch { expected: self.n_chains(), found: per_chain.len() });
        }
        self.times.push(t);
        self.w_total.push(per_chain.iter().sum());
        for (series, &w) in self.w_per_chain.iter_mut().zip(per_chain) {
            series.push(w);
        }
        self.norm.push(norm);
        Ok(())
    }

    pub fn record(&mut self, field: &AmplitudeField) -> Result<()> {
        self.push(field.t, &field.inversion_per_chain(), field.norm())
    }

    pub fn snapshot(&mut self, field: &AmplitudeField) {
        let (excited, ground) = field.densities();
        self.snapshots.push(DensitySnapshot { t: field.t, excited, ground });
    }

    /// Uniform sample spacing, if the time grid is uniform to relative `tol`.
    pub fn uniform_step(&self, tol: f64) -> Option<f64> {
        if self.times.len() < 2 {
            return None;
        }
        let dt = (self.times[self.times.len() - 1] - self.times[0]) / (self.times.len() - 1) as f64;
        if !(dt > 0.0) {
            return None;
        }
        let uniform = self.times.windows(2).all(|w| ((w[1] - w[0]) - dt).abs() <= tol * dt);
        uniform.then_some(dt)
    }

    /// `|W| ≤ norm` at every recorded time (up to `tol`).
    pub fn is_bounded(&self, tol: f64) -> bool {
        self.w_total.iter().zip(&self.norm).all(|(w, n)| w.abs() <= n + tol)
    }
}

/// Single-instant inversion trace of a field.
pub fn inversion_of(field: &AmplitudeField) -> InversionTrace {
    let mut trace = InversionTrace::new(field.n_chains());
    trace.record(field).expect("chain count taken from the field");
    trace
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rabi_dynamics::config::SystemConfig;

    #[test]
    fn excited_and_ground_limits() {
        let cfg = SystemConfig::jaynes_cummings(1.0, 0.1, 0);
        let up = AmplitudeField::excited_site(&cfg, 0, 0).unwrap();
        assert_eq!(inversion_of(&up).w_total, vec![1.0]);
        let down = AmplitudeField::ground_site(&cfg, 0, 0).unwrap();
        let tr = inversion_of(&down);
        assert_eq!(tr.w_total, vec![-1.0]);
        assert!(tr.is_bounded(0.0));
    }

    #[test]
    fn uniform_grid_detection() {
        let mut tr = InversionTrace::new(1);
        for i in 0..10 {
            tr.push(0.1 * i as f64, &[0.0], 1.0).unwrap();
        }
        assert!((tr.uniform_step(1e-9).unwrap() - 0.1).abs() < 1e-15);
        tr.push(5.0, &[0.0], 1.0).unwrap();
        assert!(tr.uniform_step(1e-9).is_none());
        assert!(tr.push(6.0, &[0.0, 1.0], 1.0).is_err());
    }
}
