//! Framewise scores after one-to-one label matching.
//!
//! Matching is pooled over all videos of a task and includes background.
//! The proposed protocol scores every ground-truth key-step separately and
//! averages over steps; the legacy protocol pools frames over all steps.

use std::collections::BTreeMap;

use super::hungarian::hungarian;
use crate::assignment::KeyStepAssignment;
use crate::error::{CncError, Result};

/// Predicted label -> ground-truth label (`None` if matched to padding).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMapping {
    pub pred_to_gt: Vec<Option<usize>>,
}

impl LabelMapping {
    pub fn identity(k: usize) -> Self {
        LabelMapping {
            pred_to_gt: (0..=k).map(Some).collect(),
        }
    }

    #[inline]
    pub fn map(&self, pred_label: usize) -> Option<usize> {
        self.pred_to_gt.get(pred_label).copied().flatten()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub iou: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub mapping: LabelMapping,
    pub per_keystep: BTreeMap<usize, StepScores>,
    pub mean_precision: f64,
    pub mean_recall: f64,
    pub mean_f1: f64,
    pub mean_iou: f64,
    pub legacy_precision: f64,
    pub legacy_recall: f64,
    pub legacy_f1: f64,
    pub legacy_iou: f64,
    pub mof: f64,
}

/// `num / den`, with an empty denominator scoring 1 only if `other` is empty too.
fn ratio(num: usize, den: usize, other: usize) -> f64 {
    if den == 0 {
        if other == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        num as f64 / den as f64
    }
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

fn check_shapes(pred: &KeyStepAssignment, gt: &KeyStepAssignment) -> Result<()> {
    if pred.per_video.len() != gt.per_video.len() {
        return Err(CncError::Domain(format!(
            "prediction covers {} videos, ground truth {}",
            pred.per_video.len(),
            gt.per_video.len()
        )));
    }
    for (vid, g) in &gt.per_video {
        match pred.per_video.get(vid) {
            Some(p) if p.len() == g.len() => {}
            Some(p) => {
                return Err(CncError::Domain(format!(
                    "video {vid}: {} predicted frames vs {} ground-truth frames",
                    p.len(),
                    g.len()
                )))
            }
            None => return Err(CncError::Domain(format!("video {vid} missing from prediction"))),
        }
    }
    Ok(())
}

/// Frame-overlap counts `[pred label][gt label]` pooled over videos.
pub fn overlap_matrix(pred: &KeyStepAssignment, gt: &KeyStepAssignment) -> Result<Vec<Vec<usize>>> {
    check_shapes(pred, gt)?;
    let mut overlap = vec![vec![0usize; gt.k + 1]; pred.k + 1];
    for (vid, g) in &gt.per_video {
        for (&p, &t) in pred.per_video[vid].iter().zip(g) {
            overlap[p][t] += 1;
        }
    }
    Ok(overlap)
}

/// One-to-one matching of predicted labels to true labels maximising overlap.
pub fn match_labels(pred: &KeyStepAssignment, gt: &KeyStepAssignment) -> Result<LabelMapping> {
    let overlap = overlap_matrix(pred, gt)?;
    let cost: Vec<Vec<f64>> = overlap
        .iter()
        .map(|row| row.iter().map(|&c| -(c as f64)).collect())
        .collect();
    Ok(LabelMapping {
        pred_to_gt: hungarian(&cost)?.row_to_col,
    })
}

/// `(|pred_l & gt_l|, |pred_l|, |gt_l|)` for every true key-step `l` in `1..=K`.
fn step_counts(pred: &KeyStepAssignment, gt: &KeyStepAssignment, mapping: &LabelMapping) -> Vec<(usize, usize, usize)> {
    let mut counts = vec![(0usize, 0usize, 0usize); gt.k + 1];
    for (vid, g) in &gt.per_video {
        for (&p, &t) in pred.per_video[vid].iter().zip(g) {
            let mapped = mapping.map(p);
            if let Some(m) = mapped.filter(|&m| m <= gt.k) {
                counts[m].1 += 1;
            }
            counts[t].2 += 1;
            if mapped == Some(t) {
                counts[t].0 += 1;
            }
        }
    }
    counts
}

fn scores(inter: usize, pred: usize, gt: usize) -> StepScores {
    let precision = ratio(inter, pred, gt);
    let recall = ratio(inter, gt, pred);
    let union = pred + gt - inter;
    StepScores {
        precision,
        recall,
        f1: harmonic(precision, recall),
        iou: ratio(inter, union, 0),
    }
}

/// Per-key-step scores and their unweighted means over the K true steps.
pub fn per_keystep_metrics(
    pred: &KeyStepAssignment,
    gt: &KeyStepAssignment,
    mapping: &LabelMapping,
) -> Result<(BTreeMap<usize, StepScores>, StepScores)> {
    check_shapes(pred, gt)?;
    let counts = step_counts(pred, gt, mapping);
    let per: BTreeMap<usize, StepScores> = (1..=gt.k)
        .map(|l| (l, scores(counts[l].0, counts[l].1, counts[l].2)))
        .collect();
    let k = gt.k.max(1) as f64;
    let mean = |f: fn(&StepScores) -> f64| per.values().map(f).sum::<f64>() / k;
    let means = StepScores {
        precision: mean(|s| s.precision),
        recall: mean(|s| s.recall),
        f1: mean(|s| s.f1),
        iou: mean(|s| s.iou),
    };
    Ok((per, means))
}

/// Framewise scores pooled over all key-steps (background excluded).
pub fn legacy_metrics(pred: &KeyStepAssignment, gt: &KeyStepAssignment, mapping: &LabelMapping) -> Result<StepScores> {
    check_shapes(pred, gt)?;
    let counts = step_counts(pred, gt, mapping);
    let (inter, p, g) = counts[1..]
        .iter()
        .fold((0, 0, 0), |acc, c| (acc.0 + c.0, acc.1 + c.1, acc.2 + c.2));
    Ok(scores(inter, p, g))
}

/// Fraction of all frames, background included, whose mapped label is correct.
pub fn mof(pred: &KeyStepAssignment, gt: &KeyStepAssignment, mapping: &LabelMapping) -> Result<f64> {
    check_shapes(pred, gt)?;
    let total = gt.total_frames();
    if total == 0 {
        return Ok(1.0);
    }
    let correct = gt
        .per_video
        .iter()
        .flat_map(|(vid, g)| pred.per_video[vid].iter().zip(g))
        .filter(|(&p, &t)| mapping.map(p) == Some(t))
        .count();
    Ok(correct as f64 / total as f64)
}

/// Matches labels, then computes every metric of the report.
pub fn evaluate(pred: &KeyStepAssignment, gt: &KeyStepAssignment) -> Result<MetricsReport> {
    let mapping = match_labels(pred, gt)?;
    let (per_keystep, means) = per_keystep_metrics(pred, gt, &mapping)?;
    let legacy = legacy_metrics(pred, gt, &mapping)?;
    let mof = mof(pred, gt, &mapping)?;
    Ok(MetricsReport {
        mapping,
        per_keystep,
        mean_precision: means.precision,
        mean_recall: means.recall,
        mean_f1: means.f1,
        mean_iou: means.iou,
        legacy_precision: legacy.precision,
        legacy_recall: legacy.recall,
        legacy_f1: legacy.f1,
        legacy_iou: legacy.iou,
        mof,
    })
}

impl MetricsReport {
    /// Summary values in alphabetical order of their names.
    pub fn summary(&self) -> [(&'static str, f64); 9] {
        [
            ("legacy_f1", self.legacy_f1),
            ("legacy_iou", self.legacy_iou),
            ("legacy_precision", self.legacy_precision),
            ("legacy_recall", self.legacy_recall),
            ("mean_f1", self.mean_f1),
            ("mean_iou", self.mean_iou),
            ("mean_precision", self.mean_precision),
            ("mean_recall", self.mean_recall),
            ("mof", self.mof),
        ]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (l, s) in &self.per_keystep {
            out.push_str(&format!(
                "per_keystep,{l},{:.6},{:.6},{:.6},{:.6}\n",
                s.precision, s.recall, s.f1, s.iou
            ));
        }
        for (name, v) in self.summary() {
            out.push_str(&format!("summary,{name},{v:.6}\n"));
        }
        out
    }
}
