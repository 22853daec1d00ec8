//! Maps raw correspondence scores onto `[-1, 1]` around a data-driven split.
//!
//! Best-match cosines are positive for almost every frame, so the raw scores
//! bunch up near 1 and a fixed bias cannot separate key-steps from background.
//! The split point is Otsu's threshold (maximum between-class variance); it
//! maps to 0, and the minimum and maximum map to -1 and +1 with linear pieces
//! on each side. The map is monotone, so score order is preserved.

use std::fmt;
use std::str::FromStr;

use crate::error::CncError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreCalibration {
    /// Use raw scores unchanged.
    None,
    Otsu,
}

impl FromStr for ScoreCalibration {
    type Err = CncError;

    fn from_str(s: &str) -> Result<Self, CncError> {
        match s {
            "none" => Ok(ScoreCalibration::None),
            "otsu" => Ok(ScoreCalibration::Otsu),
            other => Err(CncError::Config(format!(
                "score_calibration must be none or otsu, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for ScoreCalibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoreCalibration::None => "none",
            ScoreCalibration::Otsu => "otsu",
        })
    }
}

/// Threshold between the two classes that maximises between-class variance,
/// placed midway between the neighbouring sorted values. `None` when all
/// scores are equal.
pub fn otsu_threshold(scores: &[f64]) -> Option<f64> {
    let mut sorted = scores.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n < 2 || sorted[0] == sorted[n - 1] {
        return None;
    }
    let total: f64 = sorted.iter().sum();
    let mut left = 0.0;
    let mut best = (f64::NEG_INFINITY, 0usize);
    for i in 0..n - 1 {
        left += sorted[i];
        if sorted[i] == sorted[i + 1] {
            continue;
        }
        let (w0, w1) = ((i + 1) as f64, (n - i - 1) as f64);
        let gap = left / w0 - (total - left) / w1;
        let between = w0 * w1 * gap * gap;
        if between > best.0 {
            best = (between, i);
        }
    }
    let i = best.1;
    Some(0.5 * (sorted[i] + sorted[i + 1]))
}

pub fn calibrate_scores(scores: &[f64], method: ScoreCalibration) -> Vec<f64> {
    let threshold = match method {
        ScoreCalibration::None => None,
        ScoreCalibration::Otsu => otsu_threshold(scores),
    };
    let Some(theta) = threshold else {
        return scores.to_vec();
    };
    let lo = scores.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    scores
        .iter()
        .map(|&s| {
            if s >= theta {
                (s - theta) / (hi - theta)
            } else {
                (s - theta) / (theta - lo)
            }
        })
        .collect()
}
