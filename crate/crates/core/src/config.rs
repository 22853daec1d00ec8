//! Run configuration: plain `key = value` text, one key per line, `#` starts
//! a comment line. Values are layered default < file < command-line flag.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::embed::{PairStrategy, TrainConfig};
use crate::error::{CncError, Result};
use crate::procut::{PcmConfig, ScoreCalibration};
use crate::synth::SynthSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyKind {
    Count,
    Seed,
    Real,
    Path,
    PairStrategy,
    Calibration,
}

#[derive(Debug, Clone, Copy)]
pub struct KeySpec {
    pub name: &'static str,
    pub kind: KeyKind,
    pub default: &'static str,
    pub help: &'static str,
}

const fn key(name: &'static str, kind: KeyKind, default: &'static str, help: &'static str) -> KeySpec {
    KeySpec {
        name,
        kind,
        default,
        help,
    }
}

/// Every recognised key, grouped as paths, training, localisation and
/// synthetic generation.
pub const KEYS: &[KeySpec] = &[
    key("out", KeyKind::Path, "cnc_out", "Output directory"),
    key(
        "manifest",
        KeyKind::Path,
        "",
        "Task manifest; empty means <out>/manifest.txt",
    ),
    key(
        "params",
        KeyKind::Path,
        "",
        "Embedder parameter file; empty means <out>/params.cncp",
    ),
    key(
        "assignment",
        KeyKind::Path,
        "",
        "Directory of per-video label CSVs; empty means <out>/assignment",
    ),
    key(
        "seed",
        KeyKind::Seed,
        "0",
        "Seed for generation, training, clustering and baselines",
    ),
    key("learning_rate", KeyKind::Real, "0.01", "Gradient-descent step size"),
    key("steps", KeyKind::Count, "200", "Training steps, one video pair each"),
    key(
        "temperature",
        KeyKind::Real,
        "0.1",
        "Softmax temperature of the cycle-back similarities",
    ),
    key(
        "variance_weight",
        KeyKind::Real,
        "0.001",
        "Weight of the log-variance term",
    ),
    key(
        "variance_floor",
        KeyKind::Real,
        "0.000001",
        "Lower clamp of the cycle-back variance",
    ),
    key(
        "cidm_window",
        KeyKind::Count,
        "5",
        "Frames closer than this count as temporal neighbours",
    ),
    key(
        "cidm_margin",
        KeyKind::Real,
        "2.0",
        "Distance margin for non-neighbouring frames",
    ),
    key(
        "cidm_weight",
        KeyKind::Real,
        "1.0",
        "Weight of the temporal-coherence term; 0 disables it",
    ),
    key("hidden_dim", KeyKind::Count, "32", "Hidden width of the embedder"),
    key("embed_dim", KeyKind::Count, "16", "Embedding dimension"),
    key(
        "pair_strategy",
        KeyKind::PairStrategy,
        "all-pairs",
        "all-pairs or random-pair",
    ),
    key(
        "frames_per_step",
        KeyKind::Count,
        "32",
        "Frames sampled per video at each step; 0 uses whole videos",
    ),
    key(
        "k",
        KeyKind::Count,
        "0",
        "Key-steps to discover; 0 takes K from the manifest",
    ),
    key(
        "smoothness",
        KeyKind::Real,
        "0.5",
        "Penalty for a label change between neighbouring frames",
    ),
    key(
        "background_bias",
        KeyKind::Real,
        "0.0",
        "Extra cost of labelling a frame as a key-step",
    ),
    key(
        "score_calibration",
        KeyKind::Calibration,
        "otsu",
        "Score mapping before the cut: otsu or none",
    ),
    key(
        "kmeans_restarts",
        KeyKind::Count,
        "8",
        "k-means++ restarts; the lowest inertia wins",
    ),
    key("num_keysteps", KeyKind::Count, "5", "Synthetic: planted key-steps"),
    key("num_videos", KeyKind::Count, "5", "Synthetic: number of videos"),
    key("frames_per_video", KeyKind::Count, "200", "Synthetic: frames per video"),
    key("feature_dim", KeyKind::Count, "16", "Synthetic: feature dimension"),
    key(
        "foreground_ratio",
        KeyKind::Real,
        "0.6",
        "Synthetic: target fraction of key-step frames",
    ),
    key(
        "missing_prob",
        KeyKind::Real,
        "0.1",
        "Synthetic: probability of dropping each step",
    ),
    key(
        "repeat_prob",
        KeyKind::Real,
        "0.1",
        "Synthetic: probability of repeating each step",
    ),
    key(
        "order_jitter",
        KeyKind::Real,
        "0.1",
        "Synthetic: probability of swapping adjacent steps",
    ),
    key(
        "noise_sigma",
        KeyKind::Real,
        "0.05",
        "Synthetic: Gaussian feature noise scale",
    ),
    key("fps", KeyKind::Real, "1.0", "Synthetic: frames per second"),
];

pub fn key_spec(name: &str) -> Option<&'static KeySpec> {
    KEYS.iter().find(|k| k.name == name)
}

fn check_value(spec: &KeySpec, value: &str) -> Result<()> {
    let bad = |what: &str| {
        Err(CncError::Config(format!(
            "{}: expected {what}, got {value:?}",
            spec.name
        )))
    };
    match spec.kind {
        KeyKind::Count if value.parse::<usize>().is_err() => bad("a non-negative integer"),
        KeyKind::Seed if value.parse::<u64>().is_err() => bad("an unsigned 64-bit integer"),
        KeyKind::Real if !value.parse::<f64>().is_ok_and(f64::is_finite) => bad("a finite number"),
        KeyKind::PairStrategy => value.parse::<PairStrategy>().map(drop),
        KeyKind::Calibration => value.parse::<ScoreCalibration>().map(drop),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<&'static str, String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            values: KEYS.iter().map(|k| (k.name, k.default.to_string())).collect(),
        }
    }
}

impl RunConfig {
    /// Overrides one key after checking the name and the value's type.
    pub fn set(&mut self, name: &str, value: &str) -> Result<()> {
        let spec = key_spec(name).ok_or_else(|| CncError::Config(format!("unknown key {name:?}")))?;
        let value = value.trim();
        check_value(spec, value)?;
        self.values.insert(spec.name, value.to_string());
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(String::as_str)
    }

    /// Applies a config text on top of `self`. A key may appear once.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        let mut seen = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, value) = line
                .split_once('=')
                .ok_or_else(|| CncError::Config(format!("line {}: expected \"key = value\", got {line:?}", n + 1)))?;
            let name = name.trim();
            if seen.contains(&name) {
                return Err(CncError::Config(format!("line {}: duplicate key {name:?}", n + 1)));
            }
            self.set(name, value)
                .map_err(|e| CncError::Config(format!("line {}: {}", n + 1, strip_prefix(&e))))?;
            seen.push(name);
        }
        Ok(())
    }

    /// Defaults, then the optional file, then `overrides` in order.
    pub fn load(file: Option<&Path>, overrides: &[(String, String)]) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            cfg.apply_text(&crate::io::read_to_string(path)?)?;
        }
        for (name, value) in overrides {
            cfg.set(name, value)?;
        }
        Ok(cfg)
    }

    /// Every key with its help line, in table order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for k in KEYS {
            out.push_str(&format!("# {}\n{} = {}\n", k.help, k.name, self.values[k.name]));
        }
        out
    }

    fn parsed<T: std::str::FromStr>(&self, name: &str) -> T {
        match self.values[name].parse() {
            Ok(v) => v,
            Err(_) => unreachable!("{name} was checked when set"),
        }
    }

    fn path_or(&self, name: &str, fallback: &str) -> PathBuf {
        match self.values[name].as_str() {
            "" => self.out_dir().join(fallback),
            p => PathBuf::from(p),
        }
    }

    pub fn seed(&self) -> u64 {
        self.parsed("seed")
    }

    pub fn out_dir(&self) -> PathBuf {
        PathBuf::from(&self.values["out"])
    }

    pub fn manifest_path(&self) -> PathBuf {
        self.path_or("manifest", "manifest.txt")
    }

    pub fn params_path(&self) -> PathBuf {
        self.path_or("params", "params.cncp")
    }

    pub fn assignment_dir(&self) -> PathBuf {
        self.path_or("assignment", "assignment")
    }

    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            learning_rate: self.parsed("learning_rate"),
            steps: self.parsed("steps"),
            temperature: self.parsed("temperature"),
            variance_weight: self.parsed("variance_weight"),
            variance_floor: self.parsed("variance_floor"),
            cidm_window: self.parsed("cidm_window"),
            cidm_margin: self.parsed("cidm_margin"),
            cidm_weight: self.parsed("cidm_weight"),
            hidden_dim: self.parsed("hidden_dim"),
            embed_dim: self.parsed("embed_dim"),
            seed: self.seed(),
            pair_strategy: self.parsed("pair_strategy"),
            frames_per_step: self.parsed("frames_per_step"),
        }
    }

    /// Localisation settings; `manifest_k` is used when `k` is 0.
    pub fn pcm_config(&self, manifest_k: usize) -> PcmConfig {
        let k: usize = self.parsed("k");
        PcmConfig {
            k: if k == 0 { manifest_k } else { k },
            smoothness: self.parsed("smoothness"),
            background_bias: self.parsed("background_bias"),
            score_calibration: self.parsed("score_calibration"),
            kmeans_restarts: self.parsed("kmeans_restarts"),
            seed: self.seed(),
        }
    }

    pub fn synth_spec(&self) -> SynthSpec {
        SynthSpec {
            k: self.parsed("num_keysteps"),
            num_videos: self.parsed("num_videos"),
            frames_per_video: self.parsed("frames_per_video"),
            feature_dim: self.parsed("feature_dim"),
            foreground_ratio: self.parsed("foreground_ratio"),
            missing_prob: self.parsed("missing_prob"),
            repeat_prob: self.parsed("repeat_prob"),
            order_jitter: self.parsed("order_jitter"),
            noise_sigma: self.parsed("noise_sigma"),
            fps: self.parsed("fps"),
            seed: self.seed(),
        }
    }
}

fn strip_prefix(e: &CncError) -> String {
    match e {
        CncError::Config(m) => m.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_agree_with_library_defaults() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.train_config(), TrainConfig::default());
        let pcm = PcmConfig::default();
        assert_eq!(cfg.pcm_config(pcm.k), pcm);
        assert_eq!(
            cfg.synth_spec(),
            SynthSpec {
                seed: 0,
                ..SynthSpec::default()
            }
        );
    }

    #[test]
    fn text_round_trips() {
        let mut cfg = RunConfig::default();
        cfg.set("steps", "17").unwrap();
        cfg.set("pair_strategy", "random-pair").unwrap();
        let mut back = RunConfig::default();
        back.apply_text(&cfg.to_text()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_unknown_duplicate_and_mistyped_keys() {
        let mut cfg = RunConfig::default();
        assert!(matches!(cfg.apply_text("stepz = 3"), Err(CncError::Config(_))));
        assert!(cfg.apply_text("steps = 3\nsteps = 4").is_err());
        assert!(cfg.apply_text("steps = -1").is_err());
        assert!(cfg.apply_text("temperature = nan").is_err());
        assert!(cfg.apply_text("score_calibration = mean").is_err());
        assert!(cfg.apply_text("steps 3").is_err());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let mut cfg = RunConfig::default();
        cfg.apply_text("# header\n\n  seed = 9  \n# steps = 1\n").unwrap();
        assert_eq!(cfg.seed(), 9);
        assert_eq!(cfg.get("steps"), Some("200"));
    }

    #[test]
    fn flag_beats_file_beats_default() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("run.conf");
        std::fs::write(&file, "steps = 50\nseed = 3\n").unwrap();
        let cfg = RunConfig::load(Some(&file), &[("seed".into(), "4".into())]).unwrap();
        assert_eq!(cfg.get("steps"), Some("50"));
        assert_eq!(cfg.seed(), 4);
        assert_eq!(cfg.get("smoothness"), Some("0.5"));
    }

    #[test]
    fn empty_paths_resolve_under_out() {
        let mut cfg = RunConfig::default();
        cfg.set("out", "/tmp/x").unwrap();
        assert_eq!(cfg.manifest_path(), Path::new("/tmp/x/manifest.txt"));
        cfg.set("params", "p.bin").unwrap();
        assert_eq!(cfg.params_path(), Path::new("p.bin"));
    }

    #[test]
    fn zero_k_falls_back_to_manifest() {
        let mut cfg = RunConfig::default();
        assert_eq!(cfg.pcm_config(4).k, 4);
        cfg.set("k", "9").unwrap();
        assert_eq!(cfg.pcm_config(4).k, 9);
    }
}
