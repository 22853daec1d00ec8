//! Task manifest: `task,<name>,<K>` followed by
//! `<video_id>,<feature_file>,<annotation_file_or_dash>` lines.
//! Relative paths resolve against the manifest's directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::annotation::{parse_annotation_csv, TaskAnnotation};
use crate::error::{CncError, Result};
use crate::features::{load_features, FeatureSequence};

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub video_id: String,
    pub features: PathBuf,
    pub annotation: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub task_name: String,
    pub k: usize,
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).enumerate().filter(|(_, l)| !l.is_empty());
        let (_, head) = lines.next().ok_or_else(|| CncError::Format("empty manifest".into()))?;
        let head: Vec<&str> = head.split(',').map(str::trim).collect();
        if head.len() != 3 || head[0] != "task" {
            return Err(CncError::Format(
                "manifest must start with \"task,<task_name>,<K>\"".into(),
            ));
        }
        let k: usize = head[2]
            .parse()
            .map_err(|_| CncError::Format(format!("manifest K {:?} is not an integer", head[2])))?;
        let mut entries = Vec::new();
        for (n, line) in lines {
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 3 || f[0].is_empty() || f[1].is_empty() {
                return Err(CncError::Format(format!("manifest line {}: {line:?}", n + 1)));
            }
            if entries.iter().any(|e: &ManifestEntry| e.video_id == f[0]) {
                return Err(CncError::Format(format!("manifest: duplicate video id {}", f[0])));
            }
            entries.push(ManifestEntry {
                video_id: f[0].to_string(),
                features: PathBuf::from(f[1]),
                annotation: (f[2] != "-").then(|| PathBuf::from(f[2])),
            });
        }
        Ok(Manifest {
            task_name: head[1].to_string(),
            k,
            entries,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("task,{},{}\n", self.task_name, self.k);
        for e in &self.entries {
            let ann = e
                .annotation
                .as_ref()
                .map_or_else(|| "-".to_string(), |p| p.display().to_string());
            out.push_str(&format!("{},{},{}\n", e.video_id, e.features.display(), ann));
        }
        out
    }

    pub fn load(path: &Path) -> Result<(Self, PathBuf)> {
        let text = crate::io::read_to_string(path)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((Manifest::parse(&text)?, base))
    }
}

/// Features and ground truth of a task, loaded through its manifest.
#[derive(Debug, Clone)]
pub struct LoadedTask {
    pub manifest: Manifest,
    pub features: Vec<FeatureSequence>,
    /// Annotations of the videos that have an annotation file.
    pub annotation: TaskAnnotation,
}

pub fn load_task(manifest_path: &Path) -> Result<LoadedTask> {
    let (manifest, base) = Manifest::load(manifest_path)?;
    let mut features = Vec::with_capacity(manifest.entries.len());
    let mut per_video = BTreeMap::new();
    let mut durations = BTreeMap::new();
    for e in &manifest.entries {
        let mut seq = load_features(base.join(&e.features))?;
        seq.video_id = e.video_id.clone();
        if let Some(ann) = &e.annotation {
            let text = crate::io::read_to_string(&base.join(ann))?;
            per_video.insert(e.video_id.clone(), parse_annotation_csv(&text)?);
            durations.insert(e.video_id.clone(), seq.duration());
        }
        features.push(seq);
    }
    let annotation = TaskAnnotation::new(manifest.task_name.clone(), manifest.k, per_video, durations)?;
    Ok(LoadedTask {
        manifest,
        features,
        annotation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let text = "task,demo,3\nv1,f/v1.cncf,a/v1.csv\nv2,f/v2.cncf,-\n";
        let m = Manifest::parse(text).unwrap();
        assert_eq!(m.k, 3);
        assert_eq!(m.entries[1].annotation, None);
        assert_eq!(m.to_text(), text);
    }

    #[test]
    fn rejects_bad_header_and_duplicates() {
        assert!(Manifest::parse("v1,a,b\n").is_err());
        assert!(Manifest::parse("task,x,2\nv,a,-\nv,b,-\n").is_err());
    }
}
