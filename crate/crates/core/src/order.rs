//! Key-step ordering by mean normalised temporal position.

use std::collections::BTreeMap;

use crate::assignment::KeyStepAssignment;
use crate::error::{CncError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct KeyStepOrder {
    pub order: Vec<usize>,
    pub mean_positions: BTreeMap<usize, f64>,
}

impl KeyStepOrder {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("order");
        for l in &self.order {
            out.push_str(&format!(",{l}"));
        }
        out.push('\n');
        out
    }
}

/// Orders the labels present in `assignment` by the mean of `i / (T - 1)`
/// over their frames (0 for single-frame videos); ties go to the lower label.
pub fn keystep_order(assignment: &KeyStepAssignment) -> Result<KeyStepOrder> {
    let mut sums: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for labels in assignment.per_video.values() {
        let denom = labels.len().saturating_sub(1);
        for (i, &l) in labels.iter().enumerate() {
            if l == 0 {
                continue;
            }
            let pos = if denom == 0 { 0.0 } else { i as f64 / denom as f64 };
            let entry = sums.entry(l).or_insert((0.0, 0));
            entry.0 += pos;
            entry.1 += 1;
        }
    }
    if sums.is_empty() {
        return Err(CncError::Domain("assignment has no key-step frames".into()));
    }
    let mean_positions: BTreeMap<usize, f64> = sums.into_iter().map(|(l, (s, n))| (l, s / n as f64)).collect();
    let mut order: Vec<usize> = mean_positions.keys().copied().collect();
    order.sort_by(|a, b| mean_positions[a].total_cmp(&mean_positions[b]).then(a.cmp(b)));
    Ok(KeyStepOrder { order, mean_positions })
}

/// Labels of one video with background removed and runs collapsed.
pub fn induced_sequence(assignment: &KeyStepAssignment, video_id: &str) -> Result<Vec<usize>> {
    let labels = assignment
        .labels(video_id)
        .ok_or_else(|| CncError::Domain(format!("video {video_id} not in assignment")))?;
    Ok(collapse(labels))
}

pub(crate) fn collapse(labels: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    let mut prev = 0;
    for &l in labels.iter().filter(|&&l| l != 0) {
        if l != prev {
            out.push(l);
        }
        prev = l;
    }
    out
}
