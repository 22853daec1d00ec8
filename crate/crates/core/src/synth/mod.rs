//! Seeded synthetic tasks with planted key-steps.
//!
//! Each key-step has a fixed unit prototype; its frames are the prototype
//! plus Gaussian noise. Background frames are fresh unit-sphere draws, so
//! they never correspond across videos.

mod bench;

pub use bench::{run_benchmark, BenchmarkRow, BenchmarkTable, Pipeline};

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::annotation::{KeyStepSegment, TaskAnnotation};
use crate::assignment::KeyStepAssignment;
use crate::error::{CncError, Result};
use crate::features::{save_features, FeatureSequence};
use crate::manifest::{Manifest, ManifestEntry};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub k: usize,
    pub num_videos: usize,
    pub frames_per_video: usize,
    pub feature_dim: usize,
    pub foreground_ratio: f64,
    pub missing_prob: f64,
    pub repeat_prob: f64,
    /// Probability of swapping each adjacent pair of steps.
    pub order_jitter: f64,
    pub noise_sigma: f64,
    pub fps: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            k: 5,
            num_videos: 5,
            frames_per_video: 200,
            feature_dim: 16,
            foreground_ratio: 0.6,
            missing_prob: 0.1,
            repeat_prob: 0.1,
            order_jitter: 0.1,
            noise_sigma: 0.05,
            fps: 1.0,
            seed: 7,
        }
    }
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(CncError::Config(m));
        if self.k < 1 || self.k > self.frames_per_video {
            return fail(format!(
                "need 1 <= K <= frames_per_video, got K={} T={}",
                self.k, self.frames_per_video
            ));
        }
        if self.num_videos < 2 {
            return fail(format!("need at least 2 videos, got {}", self.num_videos));
        }
        if self.feature_dim < 1 {
            return fail("feature_dim must be at least 1".into());
        }
        if !(self.foreground_ratio > 0.0 && self.foreground_ratio <= 1.0) {
            return fail(format!(
                "foreground_ratio must be in (0, 1], got {}",
                self.foreground_ratio
            ));
        }
        for (name, p) in [("missing_prob", self.missing_prob), ("repeat_prob", self.repeat_prob)] {
            if !(0.0..1.0).contains(&p) {
                return fail(format!("{name} must be in [0, 1), got {p}"));
            }
        }
        if !(self.order_jitter >= 0.0 && self.noise_sigma >= 0.0) {
            return fail("order_jitter and noise_sigma must be non-negative".into());
        }
        if !(self.fps > 0.0 && self.fps.is_finite()) {
            return fail(format!("fps must be positive, got {}", self.fps));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SynthTask {
    pub features: Vec<FeatureSequence>,
    pub annotation: TaskAnnotation,
    /// Ground-truth frame labels, identical to converting `annotation`.
    pub ground_truth: KeyStepAssignment,
}

impl SynthTask {
    pub fn frame_counts(&self) -> BTreeMap<String, usize> {
        self.features
            .iter()
            .map(|f| (f.video_id.clone(), f.frame_count()))
            .collect()
    }
}

fn unit_vector(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Spreads `total` items over `bins` bins with `min_each` guaranteed per bin.
fn split(rng: &mut ChaCha8Rng, total: usize, bins: usize, min_each: usize) -> Vec<usize> {
    let mut out = vec![min_each; bins];
    for _ in 0..total - min_each * bins {
        out[rng.gen_range(0..bins)] += 1;
    }
    out
}

fn step_sequence(spec: &SynthSpec, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut seq: Vec<usize> = (1..=spec.k).filter(|_| rng.gen::<f64>() >= spec.missing_prob).collect();
    let originals = seq.clone();
    for step in originals {
        if rng.gen::<f64>() < spec.repeat_prob {
            let at = seq.iter().position(|&s| s == step).unwrap();
            let pos = rng.gen_range(at + 1..=seq.len());
            seq.insert(pos, step);
        }
    }
    for i in 0..seq.len().saturating_sub(1) {
        if rng.gen::<f64>() < spec.order_jitter {
            seq.swap(i, i + 1);
        }
    }
    seq
}

pub fn generate(spec: &SynthSpec) -> Result<SynthTask> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (t, d) = (spec.frames_per_video, spec.feature_dim);
    let prototypes: Vec<Vec<f64>> = (0..spec.k).map(|_| unit_vector(&mut rng, d)).collect();
    let fg_frames = ((spec.foreground_ratio * t as f64).round() as usize).min(t);

    let mut features = Vec::with_capacity(spec.num_videos);
    let mut per_video = BTreeMap::new();
    let mut durations = BTreeMap::new();
    let mut truth = BTreeMap::new();
    for v in 0..spec.num_videos {
        let id = format!("video_{v:03}");
        let steps = step_sequence(spec, &mut rng);
        let (seg_lens, gap_lens) = if steps.is_empty() {
            (Vec::new(), vec![t])
        } else {
            if steps.len() > fg_frames {
                return Err(CncError::Domain(format!(
                    "{id}: {} key-step segments cannot fit in {fg_frames} foreground frames",
                    steps.len()
                )));
            }
            (
                split(&mut rng, fg_frames, steps.len(), 1),
                split(&mut rng, t - fg_frames, steps.len() + 1, 0),
            )
        };

        let mut labels = Vec::with_capacity(t);
        let mut segments = Vec::with_capacity(steps.len());
        for (i, &gap) in gap_lens.iter().enumerate() {
            labels.extend(std::iter::repeat_n(0, gap));
            if let Some(&step) = steps.get(i) {
                let start = labels.len();
                labels.extend(std::iter::repeat_n(step, seg_lens[i]));
                segments.push(KeyStepSegment {
                    start_s: start as f64 / spec.fps,
                    end_s: labels.len() as f64 / spec.fps,
                    label_id: step,
                });
            }
        }
        debug_assert_eq!(labels.len(), t);

        let mut m = Matrix::zeros(t, d);
        for (i, &l) in labels.iter().enumerate() {
            let base = if l == 0 {
                unit_vector(&mut rng, d)
            } else {
                prototypes[l - 1].clone()
            };
            for (out, b) in m.row_mut(i).iter_mut().zip(base) {
                let noise: f64 = rng.sample(StandardNormal);
                *out = b + spec.noise_sigma * noise;
            }
        }

        let seq = FeatureSequence::new(id.clone(), m, spec.fps)?;
        durations.insert(id.clone(), seq.duration());
        per_video.insert(id.clone(), segments);
        truth.insert(id, labels);
        features.push(seq);
    }

    Ok(SynthTask {
        features,
        annotation: TaskAnnotation::new("synthetic", spec.k, per_video, durations)?,
        ground_truth: KeyStepAssignment::new(spec.k, truth)?,
    })
}

/// Writes `features/<id>.cncf`, `annotations/<id>.csv` and `manifest.txt`
/// under `dir`; returns the manifest path.
pub fn write_task(task: &SynthTask, dir: &Path) -> Result<PathBuf> {
    let mut entries = Vec::with_capacity(task.features.len());
    for f in &task.features {
        let feat = PathBuf::from("features").join(format!("{}.cncf", f.video_id));
        let ann = PathBuf::from("annotations").join(format!("{}.csv", f.video_id));
        save_features(f, dir.join(&feat))?;
        crate::io::write_atomic(&dir.join(&ann), task.annotation.to_csv(&f.video_id).as_bytes())?;
        entries.push(ManifestEntry {
            video_id: f.video_id.clone(),
            features: feat,
            annotation: Some(ann),
        });
    }
    let manifest = Manifest {
        task_name: task.annotation.task_name.clone(),
        k: task.annotation.k,
        entries,
    };
    let path = dir.join("manifest.txt");
    crate::io::write_atomic(&path, manifest.to_text().as_bytes())?;
    Ok(path)
}
