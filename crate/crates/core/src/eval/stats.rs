//! Task-level annotation statistics: foreground ratio, missing and repeated
//! key-steps.

use crate::annotation::TaskAnnotation;
use crate::error::{CncError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DatasetStats {
    /// `F = (1/N) sum_n t_k^n / t_v^n`
    pub foreground_ratio: f64,
    /// `M = 1 - sum_n u_n / (K N)`
    pub missing_keysteps: f64,
    /// `R = 1 - sum_n u_n / sum_n g_n`
    pub repeated_keysteps: f64,
}

pub fn dataset_stats(annotation: &TaskAnnotation) -> Result<DatasetStats> {
    let n = annotation.video_count();
    if n == 0 {
        return Err(CncError::Domain("no annotated videos".into()));
    }
    let mut ratio_sum = 0.0;
    let mut unique = 0usize;
    let mut segments = 0usize;
    for vid in annotation.per_video.keys() {
        let tv = annotation.durations.get(vid).copied().unwrap_or(0.0);
        if tv <= 0.0 {
            return Err(CncError::Domain(format!("video {vid} has zero duration")));
        }
        ratio_sum += annotation.keystep_duration(vid) / tv;
        unique += annotation.unique_labels(vid);
        segments += annotation.segment_count(vid);
    }
    if segments == 0 {
        return Err(CncError::Domain(
            "no annotated segments, repeated key-steps is undefined".into(),
        ));
    }
    // 1 - a/b computed as (b - a)/b, exact whenever the ratio is representable.
    let slots = annotation.k * n;
    Ok(DatasetStats {
        foreground_ratio: ratio_sum / n as f64,
        missing_keysteps: (slots - unique) as f64 / slots as f64,
        repeated_keysteps: (segments - unique) as f64 / segments as f64,
    })
}

impl DatasetStats {
    pub fn to_csv(&self) -> String {
        format!(
            "statistic,value\nforeground_ratio,{:.6}\nmissing_keysteps,{:.6}\nrepeated_keysteps,{:.6}\n",
            self.foreground_ratio, self.missing_keysteps, self.repeated_keysteps
        )
    }
}
