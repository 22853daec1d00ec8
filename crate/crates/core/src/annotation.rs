//! Ground-truth key-step annotations and their conversion to frame labels.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::error::{CncError, Result};

pub const ANNOTATION_HEADER: &str = "start,end,label";

/// Slack allowed when checking that a segment ends inside its video.
const DURATION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyStepSegment {
    pub start_s: f64,
    pub end_s: f64,
    pub label_id: usize,
}

impl KeyStepSegment {
    pub fn duration(&self) -> f64 {
        self.end_s - self.start_s
    }
}

/// Key-step segments for every annotated video of one task.
///
/// Holds the quantities behind the dataset statistics: N videos, K steps,
/// `u_n` unique labels and `g_n` segments per video, `t_k^n` summed
/// key-step time and `t_v^n` video duration.
#[derive(Debug, Clone, PartialEq)]
pub struct TaskAnnotation {
    pub task_name: String,
    pub k: usize,
    pub per_video: BTreeMap<String, Vec<KeyStepSegment>>,
    pub durations: BTreeMap<String, f64>,
}

impl TaskAnnotation {
    /// Builds and validates an annotation. Segments are stored sorted by start time.
    pub fn new(
        task_name: impl Into<String>,
        k: usize,
        per_video: BTreeMap<String, Vec<KeyStepSegment>>,
        durations: BTreeMap<String, f64>,
    ) -> Result<Self> {
        if k < 1 {
            return Err(CncError::Validation("K must be at least 1".into()));
        }
        let mut sorted = BTreeMap::new();
        for (vid, mut segs) in per_video {
            let duration = *durations
                .get(&vid)
                .ok_or_else(|| CncError::Validation(format!("video {vid}: no duration given")))?;
            validate_segments(&vid, &mut segs, duration, k)?;
            sorted.insert(vid, segs);
        }
        Ok(TaskAnnotation {
            task_name: task_name.into(),
            k,
            per_video: sorted,
            durations,
        })
    }

    pub fn video_count(&self) -> usize {
        self.per_video.len()
    }

    pub fn unique_labels(&self, video_id: &str) -> usize {
        self.per_video
            .get(video_id)
            .map_or(0, |s| s.iter().map(|g| g.label_id).collect::<BTreeSet<_>>().len())
    }

    pub fn segment_count(&self, video_id: &str) -> usize {
        self.per_video.get(video_id).map_or(0, Vec::len)
    }

    pub fn keystep_duration(&self, video_id: &str) -> f64 {
        self.per_video
            .get(video_id)
            .map_or(0.0, |s| s.iter().map(KeyStepSegment::duration).sum())
    }

    /// CSV text for one video in the annotation file format.
    pub fn to_csv(&self, video_id: &str) -> String {
        let mut out = String::from(ANNOTATION_HEADER);
        out.push('\n');
        for s in self.per_video.get(video_id).into_iter().flatten() {
            out.push_str(&format!("{},{},{}\n", s.start_s, s.end_s, s.label_id));
        }
        out
    }
}

fn validate_segments(vid: &str, segs: &mut [KeyStepSegment], duration: f64, k: usize) -> Result<()> {
    if !(duration.is_finite() && duration >= 0.0) {
        return Err(CncError::Validation(format!(
            "video {vid}: invalid duration {duration}"
        )));
    }
    for s in segs.iter() {
        if !(s.start_s.is_finite() && s.end_s.is_finite()) {
            return Err(CncError::Validation(format!("video {vid}: non-finite segment bound")));
        }
        if s.start_s >= s.end_s {
            return Err(CncError::Validation(format!(
                "video {vid}: segment start {} is not before end {}",
                s.start_s, s.end_s
            )));
        }
        if s.start_s < 0.0 || s.end_s > duration + DURATION_SLACK {
            return Err(CncError::Validation(format!(
                "video {vid}: segment [{}, {}) outside [0, {duration}]",
                s.start_s, s.end_s
            )));
        }
        if s.label_id < 1 || s.label_id > k {
            return Err(CncError::Validation(format!(
                "video {vid}: label {} outside 1..={k}",
                s.label_id
            )));
        }
    }
    segs.sort_by(|a, b| a.start_s.total_cmp(&b.start_s));
    for w in segs.windows(2) {
        if w[1].start_s < w[0].end_s {
            return Err(CncError::Validation(format!(
                "video {vid}: segments [{}, {}) and [{}, {}) overlap",
                w[0].start_s, w[0].end_s, w[1].start_s, w[1].end_s
            )));
        }
    }
    Ok(())
}

/// Parses one annotation CSV. Bounds and overlap are checked later by
/// [`TaskAnnotation::new`].
pub fn parse_annotation_csv(text: &str) -> Result<Vec<KeyStepSegment>> {
    let mut lines = text.lines();
    match lines.next().map(str::trim) {
        Some(ANNOTATION_HEADER) => {}
        other => {
            return Err(CncError::Format(format!(
                "annotation header must be {ANNOTATION_HEADER:?}, found {other:?}"
            )))
        }
    }
    let mut segs = Vec::new();
    for (n, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = || CncError::Format(format!("annotation line {}: {line:?}", n + 2));
        if fields.len() != 3 {
            return Err(bad());
        }
        let start_s: f64 = fields[0].parse().map_err(|_| bad())?;
        let end_s: f64 = fields[1].parse().map_err(|_| bad())?;
        let label: i64 = fields[2].parse().map_err(|_| bad())?;
        if label < 1 {
            return Err(CncError::Validation(format!(
                "annotation line {}: label {label} is below 1",
                n + 2
            )));
        }
        segs.push(KeyStepSegment {
            start_s,
            end_s,
            label_id: label as usize,
        });
    }
    Ok(segs)
}

/// Loads annotations for the videos in `durations`.
///
/// `path` is either a single `<video_id>.csv` file or a directory holding one
/// such file per video.
pub fn load_annotations(path: impl AsRef<Path>, durations: &BTreeMap<String, f64>, k: usize) -> Result<TaskAnnotation> {
    let path = path.as_ref();
    let mut per_video = BTreeMap::new();
    if path.is_dir() {
        for vid in durations.keys() {
            let file = path.join(format!("{vid}.csv"));
            let text = crate::io::read_to_string(&file)?;
            per_video.insert(vid.clone(), parse_annotation_csv(&text)?);
        }
    } else {
        let vid = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let text = crate::io::read_to_string(path)?;
        per_video.insert(vid, parse_annotation_csv(&text)?);
    }
    let task = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    TaskAnnotation::new(task, k, per_video, durations.clone())
}

/// Frame `i` takes label `l` when its center `(i + 0.5) / fps` lies in
/// `[start_s, end_s)` of a segment labelled `l`; otherwise background (0).
pub fn segments_to_frame_labels(
    annotation: &TaskAnnotation,
    video_id: &str,
    frame_count: usize,
    fps: f64,
) -> Result<Vec<usize>> {
    let segs = annotation
        .per_video
        .get(video_id)
        .ok_or_else(|| CncError::Domain(format!("video {video_id} is not annotated")))?;
    Ok(frame_labels_from_segments(segs, frame_count, fps))
}

pub(crate) fn frame_labels_from_segments(segs: &[KeyStepSegment], frame_count: usize, fps: f64) -> Vec<usize> {
    (0..frame_count)
        .map(|i| {
            let center = (i as f64 + 0.5) / fps;
            segs.iter()
                .find(|s| s.start_s <= center && center < s.end_s)
                .map_or(0, |s| s.label_id)
        })
        .collect()
}
