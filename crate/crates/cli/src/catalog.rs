//! Measured Raman line sets and the arithmetic relations printed alongside
//! them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::peaks::{Peak, PeakList};

const SHIPPED: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceLine {
    /// cm⁻¹
    pub center: f64,
    pub uncertainty: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BroadLine {
    pub center: f64,
    pub center_uncertainty: f64,
    pub width: f64,
    pub width_uncertainty: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiamondLine {
    pub center: f64,
    #[serde(default)]
    pub uncertainty: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub lines: Vec<ReferenceLine>,
    #[serde(default)]
    pub broad_line: Option<BroadLine>,
    #[serde(default)]
    pub diamond: Option<DiamondLine>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineRef {
    pub entry: String,
    pub center: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrintedRatio {
    pub numerator: LineRef,
    pub denominator: LineRef,
    pub printed: String,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrintedShift {
    pub from: LineRef,
    pub to: LineRef,
    pub printed: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sideband {
    pub line: LineRef,
    pub printed: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrintedSplittings {
    pub central: LineRef,
    pub sidebands: Vec<Sideband>,
    pub printed_average: String,
}

/// Read-only line catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceCatalog {
    pub entries: BTreeMap<String, CatalogEntry>,
    pub ratios: Vec<PrintedRatio>,
    pub shifts: Vec<PrintedShift>,
    pub splittings: PrintedSplittings,
}

impl ReferenceCatalog {
    /// The catalog bundled with the crate.
    pub fn shipped() -> Self {
        Self::from_json(SHIPPED).expect("bundled catalog is valid")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let cat: Self = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let mut refs: Vec<&LineRef> = Vec::new();
        for r in &cat.ratios {
            refs.extend([&r.numerator, &r.denominator]);
        }
        for s in &cat.shifts {
            refs.extend([&s.from, &s.to]);
        }
        refs.push(&cat.splittings.central);
        refs.extend(cat.splittings.sidebands.iter().map(|s| &s.line));
        for r in refs {
            cat.resolve(r).map_err(|e| e.to_string())?;
        }
        let printed = cat
            .ratios
            .iter()
            .map(|r| &r.printed)
            .chain(cat.shifts.iter().map(|s| &s.printed))
            .chain(cat.splittings.sidebands.iter().map(|s| &s.printed))
            .chain(std::iter::once(&cat.splittings.printed_average));
        for p in printed {
            if p.parse::<f64>().map_or(true, |v| !v.is_finite()) || p.contains(['e', 'E']) {
                return Err(format!("printed value `{p}` is not a plain decimal"));
            }
        }
        for (name, e) in &cat.entries {
            if e.lines.iter().any(|l| !(l.uncertainty >= 0.0) || !(l.center > 0.0)) {
                return Err(format!("entry `{name}` has an invalid line"));
            }
        }
        Ok(cat)
    }

    pub fn entry(&self, name: &str) -> Result<&CatalogEntry, AnalysisError> {
        self.entries.get(name).ok_or_else(|| AnalysisError::UnknownEntry(name.to_string()))
    }

    pub fn resolve(&self, r: &LineRef) -> Result<ReferenceLine, AnalysisError> {
        self.entry(&r.entry)?
            .lines
            .iter()
            .find(|l| l.center == r.center)
            .copied()
            .ok_or_else(|| AnalysisError::UnknownEntry(format!("{}:{}", r.entry, r.center)))
    }

    /// The lines of `entry` as zero-width peaks, for self-matching.
    pub fn as_peaks(&self, entry: &str) -> Result<PeakList, AnalysisError> {
        let e = self.entry(entry)?;
        Ok(PeakList::new(
            e.lines.iter().map(|l| Peak { center: l.center, height: 1.0, width: 0.0, prominence: 1.0 }).collect(),
        ))
    }
}

/// A printed decimal and the half-unit of its last digit.
fn printed_value(text: &str) -> (f64, f64) {
    let value: f64 = text.parse().expect("printed values are validated decimals");
    let decimals = text.split_once('.').map_or(0, |(_, frac)| frac.len());
    (value, 0.5 * 10f64.powi(-(decimals as i32)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub computed: f64,
    pub printed: f64,
    pub tolerance: f64,
    pub agrees: bool,
}

impl Check {
    fn new(label: String, computed: f64, printed: f64, tolerance: f64) -> Self {
        let agrees = (computed - printed).abs() <= tolerance * (1.0 + 1e-9);
        Self { label, computed, printed, tolerance, agrees }
    }

    fn rounded(label: String, computed: f64, printed: &str) -> Self {
        let (p, tol) = printed_value(printed);
        Self::new(label, computed, p, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogDiagnostics {
    pub ratios: Vec<Check>,
    pub shifts: Vec<Check>,
    pub splittings: Vec<Check>,
    pub splitting_average: Check,
}

impl CatalogDiagnostics {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.ratios.iter().chain(&self.shifts).chain(&self.splittings).chain(std::iter::once(&self.splitting_average))
    }

    pub fn all_agree(&self) -> bool {
        self.checks().all(|c| c.agrees)
    }
}

/// Recomputes every printed ratio, shift and splitting from the line
/// centers. Printed values without an explicit tolerance must agree to half
/// a unit in their last printed digit.
pub fn catalog_diagnostics(cat: &ReferenceCatalog) -> CatalogDiagnostics {
    let line = |r: &LineRef| cat.resolve(r).expect("references validated on load").center;
    let ratios = cat
        .ratios
        .iter()
        .map(|r| {
            let (printed, _) = printed_value(&r.printed);
            let (num, den) = (line(&r.numerator), line(&r.denominator));
            Check::new(format!("{num}/{den}"), num / den, printed, r.tolerance)
        })
        .collect();
    let shifts = cat
        .shifts
        .iter()
        .map(|s| {
            let (from, to) = (line(&s.from), line(&s.to));
            Check::rounded(format!("{from}-{to}"), from - to, &s.printed)
        })
        .collect();
    let central = line(&cat.splittings.central);
    let splittings: Vec<Check> = cat
        .splittings
        .sidebands
        .iter()
        .map(|s| {
            let side = line(&s.line);
            Check::rounded(format!("|{side}-{central}|"), (side - central).abs(), &s.printed)
        })
        .collect();
    let mean = splittings.iter().map(|c| c.computed).sum::<f64>() / splittings.len().max(1) as f64;
    let splitting_average = Check::rounded("mean splitting".into(), mean, &cat.splittings.printed_average);
    CatalogDiagnostics { ratios, shifts, splittings, splitting_average }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineMatch {
    pub reference: f64,
    pub uncertainty: f64,
    /// Matched peak center in cm⁻¹.
    pub observed: Option<f64>,
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchReport {
    pub entry: String,
    pub scale: f64,
    pub lines: Vec<LineMatch>,
    /// Scaled centers of peaks left without a line.
    pub unmatched_peaks: Vec<f64>,
    pub diagnostics: CatalogDiagnostics,
}

impl MatchReport {
    pub fn matched(&self) -> usize {
        self.lines.iter().filter(|l| l.observed.is_some()).count()
    }
}

/// Greedy nearest matching of scaled peak centers to the lines of `entry`.
/// A pair is admissible when the distance is within the line uncertainty
/// combined in quadrature with the peak half width; pairs are taken in order
/// of distance, ties going to the lower line and then the lower peak.
pub fn compare_catalog(
    peaks: &PeakList,
    cat: &ReferenceCatalog,
    entry: &str,
    scale: f64,
) -> Result<MatchReport, AnalysisError> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(AnalysisError::Precondition(format!("scale must be > 0, got {scale}")));
    }
    let lines = &cat.entry(entry)?.lines;
    let observed: Vec<(f64, f64)> =
        peaks.peaks.iter().map(|p| (p.center * scale, 0.5 * p.width.abs() * scale)).collect();

    let mut pairs = Vec::new();
    for (li, l) in lines.iter().enumerate() {
        for (pi, &(c, half)) in observed.iter().enumerate() {
            let d = (c - l.center).abs();
            if d <= l.uncertainty.hypot(half) {
                pairs.push((d, li, pi));
            }
        }
    }
    pairs.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(lines[a.1].center.total_cmp(&lines[b.1].center))
            .then(observed[a.2].0.total_cmp(&observed[b.2].0))
    });
    let mut line_to_peak = vec![None; lines.len()];
    let mut peak_used = vec![false; observed.len()];
    for (_, li, pi) in pairs {
        if line_to_peak[li].is_none() && !peak_used[pi] {
            line_to_peak[li] = Some(pi);
            peak_used[pi] = true;
        }
    }
    let matches = lines
        .iter()
        .zip(&line_to_peak)
        .map(|(l, m)| {
            let obs = m.map(|pi| observed[pi].0);
            LineMatch {
                reference: l.center,
                uncertainty: l.uncertainty,
                observed: obs,
                residual: obs.map(|o| o - l.center),
            }
        })
        .collect();
    let unmatched_peaks = observed.iter().zip(&peak_used).filter(|(_, used)| !**used).map(|(o, _)| o.0).collect();
    Ok(MatchReport {
        entry: entry.to_string(),
        scale,
        lines: matches,
        unmatched_peaks,
        diagnostics: catalog_diagnostics(cat),
    })
}
