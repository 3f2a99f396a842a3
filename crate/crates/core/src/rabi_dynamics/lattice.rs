//! Fixed-step RK4 integration of the lattice equations of motion.
//!
//! The state is advanced in the frame rotating at `ω₀/2`
//! (`Ã = A e^{iω₀t/2}`, `B̃ = B e^{−iω₀t/2}`), where the qubit term vanishes
//! and the drive carries the phase `e^{∓i(δt − kma)}` with `δ = ω − ω₀`.
//! Those phases are evaluated exactly at every stage time. Populations are
//! frame independent; the returned field is converted back.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::C64;

use super::config::SystemConfig;
use super::field::AmplitudeField;
use super::hamiltonian::{build_hamiltonian, Frame, HamiltonianSpec};
use super::inversion::InversionTrace;

/// Relative norm drift that aborts a run.
pub const NORM_FAILURE_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeRun {
    /// Duration of the run (starts at `initial.t`).
    pub t_end: f64,
    pub dt: f64,
    /// Record the inversion every `record_stride` steps (≥ 1).
    pub record_stride: usize,
    /// Also store site densities every `n` steps.
    pub snapshot_stride: Option<usize>,
}

impl LatticeRun {
    /// Step size with `rate·dt ≤ 0.1` and an RK4 norm-loss estimate
    /// `t_end·rate⁶·dt⁵/72` below `norm_tol / 10`.
    pub fn recommended_dt(cfg: &SystemConfig, t_end: f64, norm_tol: f64) -> Result<f64> {
        let spec = build_hamiltonian(cfg)?;
        let rate = spec.max_rate(Frame::Rotating);
        if rate == 0.0 {
            return Ok(t_end.max(1e-300) / 64.0);
        }
        let stability = 0.1 / rate;
        let accuracy = (0.1 * norm_tol * 72.0 / (t_end.max(1e-300) * rate.powi(6))).powf(0.2);
        Ok(stability.min(accuracy))
    }

    pub fn auto(cfg: &SystemConfig, t_end: f64, record_stride: usize) -> Result<Self> {
        Ok(Self { t_end, dt: Self::recommended_dt(cfg, t_end, 1e-9)?, record_stride, snapshot_stride: None })
    }

    /// Number of steps, `round(t_end / dt)`.
    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeOutcome {
    pub trace: InversionTrace,
    pub final_field: AmplitudeField,
}

struct Rhs<'a> {
    spec: &'a HamiltonianSpec,
    /// `e^{ikma}` per site.
    site_phase: Vec<C64>,
    c1: Vec<C64>,
    c2: Vec<C64>,
    neighbors: Vec<[Option<usize>; 2]>,
    sum_a: Vec<C64>,
    sum_b: Vec<C64>,
}

impl<'a> Rhs<'a> {
    fn new(spec: &'a HamiltonianSpec) -> Self {
        let it = &spec.interaction;
        Self {
            spec,
            site_phase: (0..spec.n_sites).map(|m| C64::from_polar(1.0, it.k_wave * m as f64 * it.a)).collect(),
            c1: spec.hopping.xi1.first_row().to_vec(),
            c2: spec.hopping.xi2.first_row().to_vec(),
            neighbors: (0..spec.n_sites).map(|m| spec.neighbors(m)).collect(),
            sum_a: vec![C64::zero(); spec.n_chains],
            sum_b: vec![C64::zero(); spec.n_chains],
        }
    }

    /// `dy/dt` for the rotating-frame state `y = [Ã…, B̃…]`.
    fn eval(&mut self, t: f64, y: &[C64], out: &mut [C64]) {
        let n = self.spec.n_chains;
        let half = self.spec.n_sites * n;
        let big_g = self.spec.interaction.coupling();
        let decay = -0.5 * self.spec.lambda;
        let drive = C64::from_polar(big_g, -self.spec.detuning() * t);
        let i = C64::i();
        let (ya, yb) = y.split_at(half);
        let (oa, ob) = out.split_at_mut(half);
        for m in 0..self.spec.n_sites {
            self.sum_a.iter_mut().for_each(|z| *z = C64::zero());
            self.sum_b.iter_mut().for_each(|z| *z = C64::zero());
            for nb in self.neighbors[m].into_iter().flatten() {
                for jp in 0..n {
                    self.sum_a[jp] += ya[nb * n + jp];
                    self.sum_b[jp] += yb[nb * n + jp];
                }
            }
            let to_a = drive * self.site_phase[m];
            let to_b = to_a.conj();
            for j in 0..n {
                let idx = m * n + j;
                let mut hop_a = C64::zero();
                let mut hop_b = C64::zero();
                for jp in 0..n {
                    let r = (jp + n - j) % n;
                    hop_a += self.c1[r] * self.sum_a[jp];
                    hop_b += self.c2[r] * self.sum_b[jp];
                }
                oa[idx] = decay * ya[idx] - i * to_a * yb[idx] + i * hop_a;
                ob[idx] = decay * yb[idx] - i * to_b * ya[idx] + i * hop_b;
            }
        }
    }
}

fn frame_phase(omega0: f64, t: f64) -> C64 {
    C64::from_polar(1.0, 0.5 * omega0 * t)
}

fn to_rotating(field: &AmplitudeField, omega0: f64) -> Vec<C64> {
    let p = frame_phase(omega0, field.t);
    let pc = p.conj();
    field.excited.iter().map(|z| z * p).chain(field.ground.iter().map(|z| z * pc)).collect()
}

fn from_rotating(y: &[C64], template: &AmplitudeField, omega0: f64, t: f64) -> AmplitudeField {
    let half = y.len() / 2;
    let p = frame_phase(omega0, t);
    let pc = p.conj();
    let mut f = template.clone();
    f.t = t;
    for (dst, src) in f.excited.iter_mut().zip(&y[..half]) {
        *dst = src * pc;
    }
    for (dst, src) in f.ground.iter_mut().zip(&y[half..]) {
        *dst = src * p;
    }
    f
}

fn rotating_snapshot(y: &[C64], template: &AmplitudeField, t: f64) -> AmplitudeField {
    // only populations are read from this, so the frame does not matter
    from_rotating(y, template, 0.0, t)
}

/// Integrates the lattice equations from `initial.t` to `initial.t + t_end`.
pub fn evolve_lattice(cfg: &SystemConfig, initial: &AmplitudeField, run: &LatticeRun) -> Result<LatticeOutcome> {
    let spec = build_hamiltonian(cfg)?;
    if initial.n_sites() != cfg.n_sites || initial.n_chains() != cfg.n_chains {
        return Err(Error::DimensionMismatch {
            expected: cfg.n_amplitudes(),
            found: initial.n_sites() * initial.n_chains(),
        });
    }
    if !(run.dt > 0.0) || !(run.t_end >= 0.0) || run.record_stride == 0 {
        return Err(Error::InvalidParameter("need dt > 0, t_end >= 0, record_stride >= 1"));
    }
    if run.snapshot_stride == Some(0) {
        return Err(Error::InvalidParameter("snapshot_stride must be >= 1"));
    }
    let steps = run.steps();
    let t0 = initial.t;
    let norm0 = initial.norm();

    let mut rhs = Rhs::new(&spec);
    let mut y = to_rotating(initial, cfg.omega0);
    let dim = y.len();
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (
        vec![C64::zero(); dim],
        vec![C64::zero(); dim],
        vec![C64::zero(); dim],
        vec![C64::zero(); dim],
        vec![C64::zero(); dim],
    );

    let mut trace = InversionTrace::new(cfg.n_chains);
    let record = |trace: &mut InversionTrace, y: &[C64], t: f64, snap: bool| -> Result<()> {
        let f = rotating_snapshot(y, initial, t);
        let norm = f.norm();
        let expected = norm0 * (-cfg.lambda * (t - t0)).exp();
        let drift = (norm - expected).abs();
        if !norm.is_finite() || drift > NORM_FAILURE_THRESHOLD * norm0.max(f64::MIN_POSITIVE) {
            return Err(Error::IntegratorFailure { time: t, norm_drift: drift });
        }
        trace.record(&f)?;
        if snap {
            trace.snapshot(&f);
        }
        Ok(())
    };
    let snap_due = |step: usize| run.snapshot_stride.is_some_and(|s| step % s == 0);

    record(&mut trace, &y, t0, snap_due(0))?;
    let h = run.dt;
    for step in 1..=steps {
        let t = t0 + (step - 1) as f64 * h;
        rhs.eval(t, &y, &mut k1);
        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        rhs.eval(t + 0.5 * h, &tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        rhs.eval(t + 0.5 * h, &tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = y[i] + h * k3[i];
        }
        rhs.eval(t + h, &tmp, &mut k4);
        for i in 0..dim {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if step % run.record_stride == 0 {
            record(&mut trace, &y, t0 + step as f64 * h, snap_due(step))?;
        }
    }
    let t_final = t0 + steps as f64 * h;
    let final_field = from_rotating(&y, initial, cfg.omega0, t_final);
    let drift = (final_field.norm() - norm0 * (-cfg.lambda * (t_final - t0)).exp()).abs();
    if !drift.is_finite() || drift > NORM_FAILURE_THRESHOLD * norm0.max(f64::MIN_POSITIVE) {
        return Err(Error::IntegratorFailure { time: t_final, norm_drift: drift });
    }
    Ok(LatticeOutcome { trace, final_field })
}

#[cfg(test)]
/// Right-hand side in the rotating frame, for cross-checks against
/// [`HamiltonianSpec::dense_matrix`].
pub(crate) fn rotating_rhs(spec: &HamiltonianSpec, t: f64, y: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::zero(); y.len()];
    Rhs::new(spec).eval(t, y, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rabi_dynamics::config::Boundary;
    use crate::rabi_dynamics::field::{ChainSelect, GaussianPacket};
    use core::f64::consts::PI;

    fn chain_cfg() -> SystemConfig {
        SystemConfig {
            n_chains: 3,
            n_sites: 7,
            omega0: 1.0,
            omega: 1.05,
            g: 0.08,
            lambda: 0.0,
            l_photons: 1,
            k_wave: 0.2,
            a: 1.0,
            xi1: vec![0.05, 0.02, 0.02],
            xi2: vec![0.03, -0.01, -0.01],
            boundary: Boundary::Periodic,
        }
    }

    #[test]
    fn rhs_matches_dense_generator() {
        for boundary in [Boundary::Periodic, Boundary::Open] {
            for n_sites in [1usize, 2, 7] {
                let cfg = SystemConfig { boundary, n_sites, lambda: 0.03, ..chain_cfg() };
                let spec = build_hamiltonian(&cfg).unwrap();
                let dim = spec.dim();
                let y: Vec<C64> =
                    (0..dim).map(|i| C64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos())).collect();
                let t = 2.3;
                let fast = rotating_rhs(&spec, t, &y);
                let h = spec.dense_matrix(t, Frame::Rotating);
                for r in 0..dim {
                    let hy: C64 = (0..dim).map(|c| h[r * dim + c] * y[c]).sum();
                    let expect = -C64::i() * hy - 0.5 * cfg.lambda * y[r];
                    assert!((fast[r] - expect).norm() < 1e-14, "{boundary:?} N={n_sites} row {r}");
                }
            }
        }
    }

    #[test]
    fn decoupled_phases_only() {
        let cfg = SystemConfig { g: 0.0, xi1: vec![0.0; 3], xi2: vec![0.0; 3], ..chain_cfg() };
        let mut init = AmplitudeField::gaussian(
            &cfg,
            &GaussianPacket { chain: ChainSelect::All, center: 3.0, width: 1.5, k0: 0.0 },
        )
        .unwrap();
        init.ground[4] = C64::new(0.3, 0.1);
        init.normalize().unwrap();
        let run = LatticeRun { t_end: 10.0, dt: 0.05, record_stride: 10, snapshot_stride: None };
        let out = evolve_lattice(&cfg, &init, &run).unwrap();
        for (a, b) in out.final_field.excited.iter().zip(&init.excited) {
            assert!((a.norm() - b.norm()).abs() < 1e-13);
        }
        // exact phases e^{∓iω₀t/2}
        let p = C64::from_polar(1.0, -0.5 * cfg.omega0 * 10.0);
        assert!((out.final_field.excited[3] - init.excited[3] * p).norm() < 1e-13);
        assert!((out.final_field.ground[4] - init.ground[4] * p.conj()).norm() < 1e-13);
        let w0 = out.trace.w_total[0];
        assert!(out.trace.w_total.iter().all(|w| (w - w0).abs() < 1e-13));
    }

    #[test]
    fn jaynes_cummings_oscillation() {
        for l in [0u32, 3] {
            let cfg = SystemConfig::jaynes_cummings(1.0, 0.05, l);
            let init = AmplitudeField::excited_site(&cfg, 0, 0).unwrap();
            let run = LatticeRun { t_end: 60.0, dt: 0.01, record_stride: 50, snapshot_stride: None };
            let out = evolve_lattice(&cfg, &init, &run).unwrap();
            let omega = cfg.rabi_frequency();
            for (t, w) in out.trace.times.iter().zip(&out.trace.w_total) {
                assert!((w - (omega * t).cos()).abs() < 1e-9, "l={l} t={t}");
            }
        }
    }

    #[test]
    fn jaynes_cummings_first_minimum() {
        let cfg = SystemConfig::jaynes_cummings(1.0, 0.1, 2);
        let init = AmplitudeField::excited_site(&cfg, 0, 0).unwrap();
        let t_min = PI / 2.0 / cfg.rabi_coupling();
        let run = LatticeRun { t_end: t_min, dt: t_min / 2000.0, record_stride: 2000, snapshot_stride: None };
        let out = evolve_lattice(&cfg, &init, &run).unwrap();
        assert!((out.final_field.inversion() + 1.0).abs() < 1e-6);
    }

    #[test]
    fn decay_is_exponential() {
        let cfg = SystemConfig { g: 0.0, xi1: vec![0.0; 3], xi2: vec![0.0; 3], lambda: 0.02, ..chain_cfg() };
        let init = AmplitudeField::excited_site(&cfg, 2, 1).unwrap();
        let run = LatticeRun { t_end: 50.0, dt: 0.05, record_stride: 100, snapshot_stride: Some(500) };
        let out = evolve_lattice(&cfg, &init, &run).unwrap();
        for (t, n) in out.trace.times.iter().zip(&out.trace.norm) {
            let e = (-cfg.lambda * t).exp();
            assert!(((n - e) / e).abs() < 1e-8);
        }
        assert_eq!(out.trace.snapshots.len(), 3);
    }

    #[test]
    fn unstable_step_is_reported() {
        let cfg = chain_cfg();
        let init = AmplitudeField::excited_site(&cfg, 0, 0).unwrap();
        let run = LatticeRun { t_end: 400.0, dt: 20.0, record_stride: 1, snapshot_stride: None };
        assert!(matches!(evolve_lattice(&cfg, &init, &run), Err(Error::IntegratorFailure { .. })));
    }

    #[test]
    fn rejects_shape_and_run_errors() {
        let cfg = chain_cfg();
        let other = SystemConfig { n_sites: 3, ..chain_cfg() };
        let init = AmplitudeField::excited_site(&other, 0, 0).unwrap();
        let run = LatticeRun { t_end: 1.0, dt: 0.1, record_stride: 1, snapshot_stride: None };
        assert!(evolve_lattice(&cfg, &init, &run).is_err());
        let init = AmplitudeField::excited_site(&cfg, 0, 0).unwrap();
        let bad = LatticeRun { dt: 0.0, ..run };
        assert!(evolve_lattice(&cfg, &init, &bad).is_err());
    }
}
