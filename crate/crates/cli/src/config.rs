//! Run configuration: one JSON document per run, unknown keys rejected.

use std::path::Path;

use rabiwave_core::rabi_dynamics::{Boundary, ChainSelect, GaussianPacket, LatticeRun, SystemConfig};
use rabiwave_core::ssh_band::SshParams;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::spectrum::Window;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub ssh: Option<SshSection>,
    #[serde(default)]
    pub band: Option<BandSection>,
    #[serde(default)]
    pub groundstate: Option<GroundStateSection>,
    #[serde(default)]
    pub system: Option<SystemSection>,
    #[serde(default)]
    pub initial: Option<InitialSection>,
    #[serde(default)]
    pub run: Option<RunSection>,
    #[serde(default)]
    pub analysis: AnalysisSection,
    #[serde(default)]
    pub catalog: CatalogSection,
    #[serde(default)]
    pub linearity: Option<LinearitySection>,
    /// Seed for randomized initial states; `--seed` takes precedence.
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SshSection {
    pub t0: f64,
    pub alpha: f64,
    pub spring_k: f64,
    pub a: f64,
    pub n_sites: usize,
    #[serde(default)]
    pub u: f64,
}

impl SshSection {
    pub fn params(&self) -> SshParams {
        SshParams {
            t0: self.t0,
            alpha: self.alpha,
            spring_k: self.spring_k,
            a: self.a,
            n_sites: self.n_sites,
            u: self.u,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandSection {
    #[serde(default = "default_k_points")]
    pub k_points: usize,
}

fn default_k_points() -> usize {
    201
}

impl Default for BandSection {
    fn default() -> Self {
        Self { k_points: default_k_points() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundStateSection {
    pub u_max: f64,
    #[serde(default = "default_u_points")]
    pub u_points: usize,
}

fn default_u_points() -> usize {
    101
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundarySetting {
    #[default]
    Periodic,
    Open,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    #[serde(default = "one")]
    pub n_chains: usize,
    #[serde(default = "one")]
    pub n_sites: usize,
    pub omega0: f64,
    /// Defaults to `omega0` (resonance).
    #[serde(default)]
    pub omega: Option<f64>,
    pub g: f64,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub l_photons: u32,
    #[serde(default)]
    pub k_wave: f64,
    #[serde(default = "unit_spacing")]
    pub a: f64,
    /// Defaults to zeros.
    #[serde(default)]
    pub xi1: Option<Vec<f64>>,
    #[serde(default)]
    pub xi2: Option<Vec<f64>>,
    #[serde(default)]
    pub boundary: BoundarySetting,
}

fn one() -> usize {
    1
}

fn unit_spacing() -> f64 {
    1.0
}

impl SystemSection {
    pub fn system(&self) -> Result<SystemConfig, CliError> {
        let zeros = vec![0.0; self.n_chains];
        let cfg = SystemConfig {
            n_chains: self.n_chains,
            n_sites: self.n_sites,
            omega0: self.omega0,
            omega: self.omega.unwrap_or(self.omega0),
            g: self.g,
            lambda: self.lambda,
            l_photons: self.l_photons,
            k_wave: self.k_wave,
            a: self.a,
            xi1: self.xi1.clone().unwrap_or_else(|| zeros.clone()),
            xi2: self.xi2.clone().unwrap_or(zeros),
            boundary: match self.boundary {
                BoundarySetting::Periodic => Boundary::Periodic,
                BoundarySetting::Open => Boundary::Open,
            },
        };
        cfg.validate().map_err(|e| CliError::Config(format!("system: {e}")))?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialSection {
    /// Excited-state Gaussian packet; `chain` absent puts it on every chain.
    Gaussian {
        #[serde(default)]
        chain: Option<usize>,
        center: f64,
        width: f64,
        #[serde(default)]
        k0: f64,
    },
    ExcitedSite {
        #[serde(default)]
        site: usize,
        #[serde(default)]
        chain: usize,
    },
    /// Normalized random excited-state amplitudes drawn from the run seed.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub t_end: f64,
    /// Step size; chosen from the coupling scale when absent.
    #[serde(default)]
    pub dt: Option<f64>,
    /// Record every `record_stride` steps.
    #[serde(default)]
    pub record_stride: Option<usize>,
    /// Record at this time spacing instead; `dt` is shrunk to divide it.
    #[serde(default)]
    pub sample_interval: Option<f64>,
    #[serde(default)]
    pub snapshot_stride: Option<usize>,
    /// Norm error budget used when choosing `dt`.
    #[serde(default = "default_norm_tol")]
    pub norm_tol: f64,
}

fn default_norm_tol() -> f64 {
    1e-9
}

impl RunSection {
    pub fn lattice_run(&self, cfg: &SystemConfig) -> Result<LatticeRun, CliError> {
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return Err(CliError::Config("run.t_end must be > 0".into()));
        }
        if let Some(dt) = self.dt {
            if !(dt > 0.0) {
                return Err(CliError::Config("run.dt must be > 0".into()));
            }
        }
        if self.record_stride.is_some() && self.sample_interval.is_some() {
            return Err(CliError::Config("set at most one of run.record_stride and run.sample_interval".into()));
        }
        if self.snapshot_stride == Some(0) || self.record_stride == Some(0) {
            return Err(CliError::Config("strides must be >= 1".into()));
        }
        let max_dt = match self.dt {
            Some(dt) => dt,
            None => LatticeRun::recommended_dt(cfg, self.t_end, self.norm_tol)?,
        };
        let (dt, record_stride) = match self.sample_interval {
            Some(s) if !(s > 0.0) => return Err(CliError::Config("run.sample_interval must be > 0".into())),
            Some(s) => {
                let per = (s / max_dt).ceil().max(1.0) as usize;
                (s / per as f64, per)
            }
            None => (max_dt, self.record_stride.unwrap_or(1)),
        };
        Ok(LatticeRun { t_end: self.t_end, dt, record_stride, snapshot_stride: self.snapshot_stride })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSection {
    #[serde(default)]
    pub window: Window,
    #[serde(default = "default_pad")]
    pub pad_factor: usize,
    #[serde(default = "default_prominence")]
    pub prominence_frac: f64,
    /// Defaults to four bins of the unpadded transform.
    #[serde(default)]
    pub min_separation: Option<f64>,
    /// Expected Rabi frequency; defaults to `2g√(l+1)` of the system.
    #[serde(default)]
    pub fundamental: Option<f64>,
}

fn default_pad() -> usize {
    8
}

fn default_prominence() -> f64 {
    0.1
}

impl Default for AnalysisSection {
    fn default() -> Self {
        Self {
            window: Window::Hann,
            pad_factor: default_pad(),
            prominence_frac: default_prominence(),
            min_separation: None,
            fundamental: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogSection {
    #[serde(default = "default_entry")]
    pub entry: String,
    /// cm⁻¹ per model frequency unit.
    #[serde(default = "default_scale")]
    pub scale: f64,
}

fn default_entry() -> String {
    "cu_implanted_side".into()
}

fn default_scale() -> f64 {
    1.0
}

impl Default for CatalogSection {
    fn default() -> Self {
        Self { entry: default_entry(), scale: default_scale() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearitySection {
    pub g_values: Vec<f64>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse { path: path.into(), message: e.to_string() })
    }

    pub fn ssh(&self) -> Result<SshParams, CliError> {
        let p = self.ssh.ok_or_else(|| missing("ssh"))?.params();
        p.validate().map_err(|e| CliError::Config(format!("ssh: {e}")))?;
        Ok(p)
    }

    pub fn experiment(&self) -> Result<Experiment, CliError> {
        let system = self.system.as_ref().ok_or_else(|| missing("system"))?.system()?;
        let initial = self.initial.clone().ok_or_else(|| missing("initial"))?;
        let run = self.run.ok_or_else(|| missing("run"))?;
        Ok(Experiment { system, initial, run, analysis: self.analysis })
    }
}

pub fn missing(section: &str) -> CliError {
    CliError::Config(format!("missing `{section}` section"))
}

/// Everything needed to reproduce one lattice run and its analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub system: SystemConfig,
    pub initial: InitialSection,
    pub run: RunSection,
    pub analysis: AnalysisSection,
}

impl Experiment {
    pub fn with_g(&self, g: f64) -> Self {
        let mut e = self.clone();
        e.system.g = g;
        e
    }

    pub fn packet(&self) -> Option<GaussianPacket> {
        match self.initial {
            InitialSection::Gaussian { chain, center, width, k0 } => {
                Some(GaussianPacket { chain: chain.map_or(ChainSelect::All, ChainSelect::One), center, width, k0 })
            }
            _ => None,
        }
    }

    pub fn fundamental(&self) -> f64 {
        self.analysis.fundamental.unwrap_or_else(|| self.system.rabi_frequency())
    }
}
