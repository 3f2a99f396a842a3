use serde::Serialize;

use crate::error::AnalysisError;
use crate::peaks::{Peak, PeakList};

/// Largest relative distance between the expected fundamental and the peak
/// labeled principal.
pub const FUNDAMENTAL_WINDOW: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RevivalLabels {
    /// Expected Rabi frequency the labels were anchored to.
    pub expected: f64,
    pub principal: Peak,
    /// Peaks above the principal, ascending.
    pub revivals: Vec<Peak>,
    /// Peaks below the principal.
    pub other: Vec<Peak>,
}

pub fn classify_revival(peaks: &PeakList, fundamental: f64) -> Result<RevivalLabels, AnalysisError> {
    if !(fundamental > 0.0) || !fundamental.is_finite() {
        return Err(AnalysisError::Precondition(format!("fundamental must be > 0, got {fundamental}")));
    }
    let nearest =
        peaks.peaks.iter().min_by(|a, b| (a.center - fundamental).abs().total_cmp(&(b.center - fundamental).abs()));
    let principal = match nearest {
        Some(p) if (p.center - fundamental).abs() <= FUNDAMENTAL_WINDOW * fundamental => *p,
        other => return Err(AnalysisError::ClassificationFailed { fundamental, nearest: other.map(|p| p.center) }),
    };
    let (mut revivals, mut other) = (Vec::new(), Vec::new());
    for p in &peaks.peaks {
        if p.center > principal.center {
            revivals.push(*p);
        } else if p.center < principal.center {
            other.push(*p);
        }
    }
    Ok(RevivalLabels { expected: fundamental, principal, revivals, other })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn peak(center: f64, height: f64) -> Peak {
        Peak { center, height, width: 0.01, prominence: height }
    }

    #[test]
    fn labels_around_the_principal() {
        let list = PeakList::new(vec![peak(0.3, 0.2), peak(1.05, 1.0), peak(1.4, 0.3), peak(2.1, 0.1)]);
        let labels = classify_revival(&list, 1.0).unwrap();
        assert_eq!(labels.principal.center, 1.05);
        assert_eq!(labels.revivals.iter().map(|p| p.center).collect::<Vec<_>>(), vec![1.4, 2.1]);
        assert_eq!(labels.other.len(), 1);
    }

    #[test]
    fn single_line_has_no_revivals() {
        let labels = classify_revival(&PeakList::new(vec![peak(0.99, 1.0)]), 1.0).unwrap();
        assert!(labels.revivals.is_empty());
    }

    #[test]
    fn failures() {
        let list = PeakList::new(vec![peak(1.3, 1.0)]);
        assert!(matches!(
            classify_revival(&list, 1.0),
            Err(AnalysisError::ClassificationFailed { nearest: Some(n), .. }) if n == 1.3
        ));
        assert!(matches!(
            classify_revival(&PeakList::default(), 1.0),
            Err(AnalysisError::ClassificationFailed { nearest: None, .. })
        ));
        assert!(matches!(classify_revival(&list, 0.0), Err(AnalysisError::Precondition(_))));
    }
}
