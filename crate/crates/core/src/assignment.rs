//! Per-frame key-step labels for a set of videos (0 = background).

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{CncError, Result};

pub const ASSIGNMENT_HEADER: &str = "frame,label";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyStepAssignment {
    pub k: usize,
    pub per_video: BTreeMap<String, Vec<usize>>,
}

impl KeyStepAssignment {
    pub fn new(k: usize, per_video: BTreeMap<String, Vec<usize>>) -> Result<Self> {
        for (vid, labels) in &per_video {
            if let Some(&bad) = labels.iter().find(|&&l| l > k) {
                return Err(CncError::Validation(format!("video {vid}: label {bad} exceeds K={k}")));
            }
        }
        Ok(KeyStepAssignment { k, per_video })
    }

    pub fn labels(&self, video_id: &str) -> Option<&[usize]> {
        self.per_video.get(video_id).map(Vec::as_slice)
    }

    pub fn total_frames(&self) -> usize {
        self.per_video.values().map(Vec::len).sum()
    }

    /// Videos with their frame order reversed.
    pub fn time_reversed(&self) -> KeyStepAssignment {
        KeyStepAssignment {
            k: self.k,
            per_video: self
                .per_video
                .iter()
                .map(|(v, l)| (v.clone(), l.iter().rev().copied().collect()))
                .collect(),
        }
    }
}

pub fn labels_to_csv(labels: &[usize]) -> String {
    let mut out = String::with_capacity(8 * labels.len() + 12);
    out.push_str(ASSIGNMENT_HEADER);
    out.push('\n');
    for (i, l) in labels.iter().enumerate() {
        out.push_str(&format!("{i},{l}\n"));
    }
    out
}

pub fn parse_labels_csv(text: &str) -> Result<Vec<usize>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(ASSIGNMENT_HEADER) {
        return Err(CncError::Format(format!(
            "assignment header must be {ASSIGNMENT_HEADER:?}"
        )));
    }
    let mut labels = Vec::new();
    for (n, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = || CncError::Format(format!("assignment line {}: {line:?}", n + 2));
        let (frame, label) = line.split_once(',').ok_or_else(bad)?;
        let frame: usize = frame.trim().parse().map_err(|_| bad())?;
        if frame != labels.len() {
            return Err(CncError::Format(format!(
                "assignment line {}: expected frame {}, found {frame}",
                n + 2,
                labels.len()
            )));
        }
        labels.push(label.trim().parse().map_err(|_| bad())?);
    }
    Ok(labels)
}

pub fn save_assignment_dir(assignment: &KeyStepAssignment, dir: &Path) -> Result<()> {
    for (vid, labels) in &assignment.per_video {
        crate::io::write_atomic(&dir.join(format!("{vid}.csv")), labels_to_csv(labels).as_bytes())?;
    }
    Ok(())
}

/// Reads `<video_id>.csv` for each requested video id from `dir`.
pub fn load_assignment_dir<'a>(
    dir: &Path,
    video_ids: impl IntoIterator<Item = &'a str>,
    k: usize,
) -> Result<KeyStepAssignment> {
    let mut per_video = BTreeMap::new();
    for vid in video_ids {
        let text = crate::io::read_to_string(&dir.join(format!("{vid}.csv")))?;
        per_video.insert(vid.to_string(), parse_labels_csv(&text)?);
    }
    let max_label = per_video.values().flatten().copied().max().unwrap_or(0);
    KeyStepAssignment::new(k.max(max_label), per_video)
}
