//! Key-step localisation: cross-video correspondence scores, a binary
//! key-step/background min cut, then K-way clustering of the foreground.

mod calibrate;
mod graph;
mod kmeans;
mod scores;

pub use calibrate::{calibrate_scores, otsu_threshold, ScoreCalibration};
pub use graph::{build_energy_graph, min_cut, CutResult, EnergyGraph};
pub use kmeans::{cluster_foreground, labelling_inertia, Clustering};
pub use scores::correspondence_scores;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assignment::KeyStepAssignment;
use crate::error::{CncError, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq)]
pub struct PcmConfig {
    pub k: usize,
    pub smoothness: f64,
    /// Extra cost of the key-step label; a frame is foreground only when its
    /// correspondence score exceeds this value (before smoothing).
    pub background_bias: f64,
    /// How raw scores are mapped before the cut.
    pub score_calibration: ScoreCalibration,
    pub kmeans_restarts: usize,
    pub seed: u64,
}

impl Default for PcmConfig {
    fn default() -> Self {
        PcmConfig {
            k: 7,
            smoothness: 0.5,
            background_bias: 0.0,
            score_calibration: ScoreCalibration::Otsu,
            kmeans_restarts: 8,
            seed: 0,
        }
    }
}

/// Output of [`localize_detailed`], keeping the intermediate stages.
#[derive(Debug, Clone)]
pub struct Localization {
    pub assignment: KeyStepAssignment,
    /// Raw correspondence scores, before calibration.
    pub scores: BTreeMap<String, Vec<f64>>,
    /// Scores as seen by the cut.
    pub calibrated: Vec<f64>,
    pub cut: CutResult,
}

pub fn localize(embeddings: &BTreeMap<String, Matrix>, config: &PcmConfig) -> Result<KeyStepAssignment> {
    Ok(localize_detailed(embeddings, config)?.assignment)
}

pub fn localize_detailed(embeddings: &BTreeMap<String, Matrix>, config: &PcmConfig) -> Result<Localization> {
    if config.k < 1 {
        return Err(CncError::Domain("K must be at least 1".into()));
    }
    let ids: Vec<&String> = embeddings.keys().collect();
    let mats: Vec<&Matrix> = embeddings.values().collect();
    let per_video_scores = correspondence_scores(&mats)?;
    let lengths: Vec<usize> = mats.iter().map(|m| m.rows()).collect();
    let flat: Vec<f64> = per_video_scores.iter().flatten().copied().collect();
    let calibrated = calibrate_scores(&flat, config.score_calibration);
    let graph = build_energy_graph(&calibrated, &lengths, config.smoothness, config.background_bias)?;
    let cut = min_cut(&graph)?;

    let mut fg_rows = Vec::new();
    let mut fg_index = Vec::new();
    let mut offset = 0;
    for m in &mats {
        for i in 0..m.rows() {
            if cut.labels[offset + i] == 1 {
                fg_rows.push(m.row(i).to_vec());
                fg_index.push(offset + i);
            }
        }
        offset += m.rows();
    }

    let mut flat_labels = vec![0usize; offset];
    if !fg_rows.is_empty() {
        let fg = Matrix::from_rows(&fg_rows)?;
        let clusters = cluster_foreground(&fg, config.k, config.kmeans_restarts, config.seed)?;
        for (&at, &l) in fg_index.iter().zip(&clusters.labels) {
            flat_labels[at] = l;
        }
    }

    let mut per_video = BTreeMap::new();
    let mut scores = BTreeMap::new();
    let mut offset = 0;
    for ((id, len), s) in ids.iter().zip(&lengths).zip(per_video_scores) {
        per_video.insert((*id).clone(), flat_labels[offset..offset + len].to_vec());
        scores.insert((*id).clone(), s);
        offset += len;
    }
    Ok(Localization {
        assignment: KeyStepAssignment::new(config.k, per_video)?,
        scores,
        calibrated,
        cut,
    })
}

/// Every frame drawn uniformly from `1..=K`, no background.
pub fn baseline_random(frame_counts: &BTreeMap<String, usize>, k: usize, seed: u64) -> Result<KeyStepAssignment> {
    if k < 1 {
        return Err(CncError::Domain("K must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_video = frame_counts
        .iter()
        .map(|(id, &t)| (id.clone(), (0..t).map(|_| rng.gen_range(1..=k)).collect()))
        .collect();
    KeyStepAssignment::new(k, per_video)
}

/// k-means over all frames of all videos, without background separation.
pub fn baseline_cluster_all(
    embeddings: &BTreeMap<String, Matrix>,
    k: usize,
    restarts: usize,
    seed: u64,
) -> Result<KeyStepAssignment> {
    if embeddings.is_empty() {
        return Err(CncError::Domain("no videos to cluster".into()));
    }
    let mats: Vec<&Matrix> = embeddings.values().collect();
    let all = Matrix::vstack(&mats)?;
    let clusters = cluster_foreground(&all, k, restarts, seed)?;
    let mut per_video = BTreeMap::new();
    let mut offset = 0;
    for (id, m) in embeddings {
        per_video.insert(id.clone(), clusters.labels[offset..offset + m.rows()].to_vec());
        offset += m.rows();
    }
    KeyStepAssignment::new(k, per_video)
}
