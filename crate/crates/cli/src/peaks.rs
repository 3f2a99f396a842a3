use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::spectrum::Spectrum;

/// Spectra whose largest amplitude is below this fraction of the input
/// signal scale carry no peaks (round-off after mean removal).
pub const SIGNIFICANCE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub center: f64,
    pub height: f64,
    /// Full width at half maximum.
    pub width: f64,
    pub prominence: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PeakList {
    /// Sorted by center, ascending.
    pub peaks: Vec<Peak>,
}

impl PeakList {
    pub fn new(mut peaks: Vec<Peak>) -> Self {
        peaks.sort_by(|a, b| a.center.total_cmp(&b.center));
        Self { peaks }
    }

    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }

    /// Tallest peak; the lower center wins a tie.
    pub fn dominant(&self) -> Option<&Peak> {
        self.peaks.iter().reduce(|best, p| if p.height > best.height { p } else { best })
    }

    pub fn centers(&self) -> Vec<f64> {
        self.peaks.iter().map(|p| p.center).collect()
    }
}

pub fn detect_peaks(s: &Spectrum, prominence_frac: f64, min_separation: f64) -> Result<PeakList, AnalysisError> {
    if !(prominence_frac > 0.0 && prominence_frac < 1.0) {
        return Err(AnalysisError::Precondition(format!("prominence_frac must lie in (0, 1), got {prominence_frac}")));
    }
    if !(min_separation > 0.0) {
        return Err(AnalysisError::Precondition(format!("min_separation must be > 0, got {min_separation}")));
    }
    let a = &s.amplitudes;
    let max = s.max_amplitude();
    if a.len() < 3 || !(max > SIGNIFICANCE_FLOOR * s.source.signal_scale) || max == 0.0 {
        return Ok(PeakList::default());
    }
    let threshold = prominence_frac * max;

    let mut candidates: Vec<(usize, f64)> = (1..a.len() - 1)
        .filter(|&i| a[i] > a[i - 1] && a[i] >= a[i + 1])
        .map(|i| (i, prominence(a, i)))
        .filter(|&(_, p)| p > threshold)
        .collect();
    candidates.sort_by(|x, y| a[y.0].total_cmp(&a[x.0]).then(x.0.cmp(&y.0)));

    let mut kept: Vec<Peak> = Vec::new();
    for (i, prom) in candidates {
        let (center, height) = refine(s, i);
        if kept.iter().all(|p| (p.center - center).abs() >= min_separation) {
            kept.push(Peak { center, height, width: half_max_width(s, i, height), prominence: prom });
        }
    }
    Ok(PeakList::new(kept))
}

fn prominence(a: &[f64], i: usize) -> f64 {
    let h = a[i];
    let mut left_min = h;
    for &v in a[..i].iter().rev() {
        if v > h {
            break;
        }
        left_min = left_min.min(v);
    }
    let mut right_min = h;
    for &v in &a[i + 1..] {
        if v > h {
            break;
        }
        right_min = right_min.min(v);
    }
    h - left_min.max(right_min)
}

/// Three-point interpolation of the maximum; on the log scale when all
/// three values are positive (exact for Gaussian lobes).
fn refine(s: &Spectrum, i: usize) -> (f64, f64) {
    let (l, c, r) = (s.amplitudes[i - 1], s.amplitudes[i], s.amplitudes[i + 1]);
    let step = s.frequencies[i + 1] - s.frequencies[i];
    let (yl, yc, yr, log) = if l > 0.0 && r > 0.0 { (l.ln(), c.ln(), r.ln(), true) } else { (l, c, r, false) };
    let denom = yl - 2.0 * yc + yr;
    if !(denom < 0.0) {
        return (s.frequencies[i], c);
    }
    let delta = (0.5 * (yl - yr) / denom).clamp(-0.5, 0.5);
    let top = yc - 0.25 * (yl - yr) * delta;
    (s.frequencies[i] + delta * step, if log { top.exp() } else { top })
}

fn half_max_width(s: &Spectrum, i: usize, height: f64) -> f64 {
    let a = &s.amplitudes;
    let f = &s.frequencies;
    let half = 0.5 * height;
    let cross = |j: usize, k: usize| {
        // linear interpolation between j (below) and k (above half max)
        let t = (half - a[j]) / (a[k] - a[j]);
        f[j] + t * (f[k] - f[j])
    };
    let left = (0..i).rev().find(|&j| a[j] < half).map_or(f[0], |j| cross(j, j + 1));
    let right = (i + 1..a.len()).find(|&j| a[j] < half).map_or(f[a.len() - 1], |j| cross(j, j - 1));
    right - left
}
