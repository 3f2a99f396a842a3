use std::f64::consts::PI;

use rabiwave_core::rabi_dynamics::InversionTrace;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;

pub const MIN_SAMPLES: usize = 64;

/// Relative tolerance on sample spacing for a grid to count as uniform.
pub const UNIFORM_GRID_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    None,
    #[default]
    Hann,
}

impl Window {
    fn weight(self, i: usize, n: usize) -> f64 {
        match self {
            Window::None => 1.0,
            Window::Hann if n == 1 => 1.0,
            Window::Hann => 0.5 - 0.5 * (2.0 * PI * i as f64 / (n - 1) as f64).cos(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSource {
    pub samples: usize,
    pub dt: f64,
    pub pad_factor: usize,
    /// Mean removed before transforming.
    pub mean: f64,
    /// Largest `|W|` of the input.
    pub signal_scale: f64,
}

/// One-sided magnitude spectrum in angular frequency, scaled so that a
/// tone `A cos(Ωt)` peaks near `A`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub frequencies: Vec<f64>,
    pub amplitudes: Vec<f64>,
    pub window: Window,
    pub source: SpectrumSource,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn bin_width(&self) -> f64 {
        2.0 * PI / (self.source.dt * (self.source.samples * self.source.pad_factor) as f64)
    }

    pub fn max_amplitude(&self) -> f64 {
        self.amplitudes.iter().copied().fold(0.0, f64::max)
    }
}

pub fn spectrum_of(trace: &InversionTrace, window: Window, pad_factor: usize) -> Result<Spectrum, AnalysisError> {
    if trace.len() < MIN_SAMPLES {
        return Err(AnalysisError::TooFewSamples { needed: MIN_SAMPLES, found: trace.len() });
    }
    let dt = trace.uniform_step(UNIFORM_GRID_TOL).ok_or(AnalysisError::ResampleRequired)?;
    spectrum_of_samples(&trace.w_total, dt, window, pad_factor)
}

pub fn spectrum_of_samples(
    samples: &[f64],
    dt: f64,
    window: Window,
    pad_factor: usize,
) -> Result<Spectrum, AnalysisError> {
    let n = samples.len();
    if n < MIN_SAMPLES {
        return Err(AnalysisError::TooFewSamples { needed: MIN_SAMPLES, found: n });
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(AnalysisError::Precondition(format!("sample spacing must be positive, got {dt}")));
    }
    if pad_factor == 0 {
        return Err(AnalysisError::Precondition("pad_factor must be >= 1".into()));
    }
    if samples.iter().any(|w| !w.is_finite()) {
        return Err(AnalysisError::Precondition("trace contains non-finite samples".into()));
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let signal_scale = samples.iter().fold(0.0_f64, |m, w| m.max(w.abs()));
    let len = n * pad_factor;
    let mut buf = vec![Complex::new(0.0, 0.0); len];
    let mut weight_sum = 0.0;
    for (i, (&w, slot)) in samples.iter().zip(buf.iter_mut()).enumerate() {
        let wi = window.weight(i, n);
        weight_sum += wi;
        *slot = Complex::new((w - mean) * wi, 0.0);
    }
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);

    let half = len / 2;
    let step = 2.0 * PI / (len as f64 * dt);
    let norm = 2.0 / weight_sum;
    let frequencies = (0..=half).map(|k| k as f64 * step).collect();
    let amplitudes = buf[..=half].iter().map(|z| z.norm() * norm).collect();
    Ok(Spectrum {
        frequencies,
        amplitudes,
        window,
        source: SpectrumSource { samples: n, dt, pad_factor, mean, signal_scale },
    })
}
