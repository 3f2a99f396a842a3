use std::f64::consts::PI;

use rabiwave_core::rabi_dynamics::{evolve_lattice, AmplitudeField, InversionTrace, LatticeOutcome};
use rabiwave_core::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{AnalysisSection, Experiment, InitialSection};
use crate::error::{AnalysisError, CliError};
use crate::peaks::{detect_peaks, PeakList};
use crate::spectrum::{spectrum_of, Spectrum};

pub fn initial_field(e: &Experiment, seed: u64) -> Result<AmplitudeField, CliError> {
    let cfg = &e.system;
    let field = match e.initial {
        InitialSection::Gaussian { .. } => AmplitudeField::gaussian(cfg, &e.packet().expect("gaussian"))?,
        InitialSection::ExcitedSite { site, chain } => AmplitudeField::excited_site(cfg, site, chain)?,
        InitialSection::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut f = AmplitudeField::for_config(cfg)?;
            for z in f.excited.iter_mut() {
                *z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
            f.normalize()?;
            f
        }
    };
    Ok(field)
}

pub fn simulate(e: &Experiment, seed: u64) -> Result<LatticeOutcome, CliError> {
    let run = e.run.lattice_run(&e.system)?;
    let initial = initial_field(e, seed)?;
    Ok(evolve_lattice(&e.system, &initial, &run)?)
}

/// Spectrum of `W(t)` and its significant peaks.
pub fn analyze(trace: &InversionTrace, a: &AnalysisSection) -> Result<(Spectrum, PeakList), AnalysisError> {
    let s = spectrum_of(trace, a.window, a.pad_factor)?;
    let min_sep = a.min_separation.unwrap_or_else(|| 4.0 * 2.0 * PI / (s.source.samples as f64 * s.source.dt));
    let peaks = detect_peaks(&s, a.prominence_frac, min_sep)?;
    Ok((s, peaks))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Ordinary least squares `y = slope·x + intercept`.
pub fn fit_line(x: &[f64], y: &[f64]) -> Result<LinearFit, AnalysisError> {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    if n < 2 {
        return Err(AnalysisError::DegenerateFit);
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my) * (v - my)).sum();
    if !(sxx > 0.0) {
        return Err(AnalysisError::DegenerateFit);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = x.iter().zip(y).map(|(a, b)| (b - slope * a - intercept).powi(2)).sum();
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Ok(LinearFit { slope, intercept, r_squared, points: n })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub g: f64,
    /// `g√(l+1)`
    pub coupling: f64,
    pub peak: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearityReport {
    pub points: Vec<ScanPoint>,
    /// Fit over the runs that produced a peak.
    pub fit: Option<LinearFit>,
}

impl LinearityReport {
    pub fn is_complete(&self) -> bool {
        self.fit.is_some() && self.points.iter().all(|p| p.peak.is_some())
    }
}

pub const MIN_SCAN_POINTS: usize = 4;

/// Dominant spectral peak of `W(t)` against `g√(l+1)` for each `g`, all
/// else fixed. Runs are spread over `jobs` threads.
pub fn linearity_scan(
    base: &Experiment,
    g_values: &[f64],
    seed: u64,
    jobs: usize,
) -> Result<LinearityReport, CliError> {
    if g_values.len() < MIN_SCAN_POINTS {
        return Err(AnalysisError::Precondition(format!(
            "linearity scan needs at least {MIN_SCAN_POINTS} g values, got {}",
            g_values.len()
        ))
        .into());
    }
    if g_values.iter().any(|g| !(*g >= 0.0) || !g.is_finite()) {
        return Err(AnalysisError::Precondition("g values must be finite and >= 0".into()).into());
    }
    if g_values.iter().all(|g| *g == g_values[0]) {
        return Err(AnalysisError::DegenerateFit.into());
    }
    let photon = (base.system.l_photons as f64 + 1.0).sqrt();
    let one = |g: f64| -> ScanPoint {
        let e = base.with_g(g);
        let result = simulate(&e, seed).and_then(|out| Ok(analyze(&out.trace, &e.analysis)?));
        let (peak, error) = match result {
            Ok((_, peaks)) => match peaks.dominant() {
                Some(p) => (Some(p.center), None),
                None => (None, Some("no significant peak".to_string())),
            },
            Err(err) => (None, Some(err.to_string())),
        };
        ScanPoint { g, coupling: g * photon, peak, error }
    };

    let jobs = jobs.clamp(1, g_values.len());
    let mut points: Vec<Option<ScanPoint>> = vec![None; g_values.len()];
    std::thread::scope(|s| {
        for (chunk_idx, slots) in points.chunks_mut(g_values.len().div_ceil(jobs)).enumerate() {
            let offset = chunk_idx * g_values.len().div_ceil(jobs);
            let one = &one;
            s.spawn(move || {
                for (i, slot) in slots.iter_mut().enumerate() {
                    *slot = Some(one(g_values[offset + i]));
                }
            });
        }
    });
    let points: Vec<ScanPoint> = points.into_iter().map(|p| p.expect("every slot filled")).collect();

    let (x, y): (Vec<f64>, Vec<f64>) = points.iter().filter_map(|p| p.peak.map(|f| (p.coupling, f))).unzip();
    let fit = fit_line(&x, &y).ok();
    Ok(LinearityReport { points, fit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v - 0.5).collect();
        let f = fit_line(&x, &y).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-14 && (f.intercept + 0.5).abs() < 1e-14);
        assert_eq!(f.r_squared, 1.0);
        assert!(matches!(fit_line(&[1.0; 4], &y), Err(AnalysisError::DegenerateFit)));
    }

    #[test]
    fn noisy_line_r_squared() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [0.0, 1.1, 1.9, 3.0];
        let f = fit_line(&x, &y).unwrap();
        assert!(f.r_squared < 1.0 && f.r_squared > 0.98);
    }
}
