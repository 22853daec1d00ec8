//! Per-video feature matrices and the `CNCF` binary container.
//!
//! Layout (little-endian): `b"CNCF"`, `u32` version (1), `u32` T, `u32` D,
//! `f64` fps, then `T * D` `f64` values in row-major order.

use std::fs;
use std::path::Path;

use crate::error::{CncError, Result};
use crate::matrix::Matrix;

pub const FEATURE_MAGIC: &[u8; 4] = b"CNCF";
pub const FEATURE_VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 4 + 4 + 8;

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSequence {
    pub video_id: String,
    pub features: Matrix,
    pub fps: f64,
}

impl FeatureSequence {
    pub fn new(video_id: impl Into<String>, features: Matrix, fps: f64) -> Result<Self> {
        let seq = FeatureSequence {
            video_id: video_id.into(),
            features,
            fps,
        };
        seq.validate()?;
        Ok(seq)
    }

    pub fn validate(&self) -> Result<()> {
        if self.features.rows() == 0 || self.features.cols() == 0 {
            return Err(CncError::Shape(format!(
                "video {}: feature matrix must be at least 1x1, got {}x{}",
                self.video_id,
                self.features.rows(),
                self.features.cols()
            )));
        }
        if !(self.fps.is_finite() && self.fps > 0.0) {
            return Err(CncError::Value(format!(
                "video {}: fps must be positive and finite, got {}",
                self.video_id, self.fps
            )));
        }
        if let Some(pos) = self.features.as_slice().iter().position(|v| !v.is_finite()) {
            return Err(CncError::Value(format!(
                "video {}: non-finite feature at row {} col {}",
                self.video_id,
                pos / self.features.cols(),
                pos % self.features.cols()
            )));
        }
        Ok(())
    }

    pub fn frame_count(&self) -> usize {
        self.features.rows()
    }

    pub fn dim(&self) -> usize {
        self.features.cols()
    }

    /// Video duration in seconds, `T / fps`.
    pub fn duration(&self) -> f64 {
        self.frame_count() as f64 / self.fps
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 8 * self.features.as_slice().len());
        out.extend_from_slice(FEATURE_MAGIC);
        out.extend_from_slice(&FEATURE_VERSION.to_le_bytes());
        out.extend_from_slice(&(self.frame_count() as u32).to_le_bytes());
        out.extend_from_slice(&(self.dim() as u32).to_le_bytes());
        out.extend_from_slice(&self.fps.to_le_bytes());
        for v in self.features.as_slice() {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(video_id: impl Into<String>, bytes: &[u8]) -> Result<Self> {
        let video_id = video_id.into();
        if bytes.len() < HEADER_LEN {
            if bytes.len() >= 4 && &bytes[..4] != FEATURE_MAGIC {
                return Err(CncError::Format(format!("{video_id}: bad magic")));
            }
            return Err(CncError::Length(format!(
                "{video_id}: {} bytes is shorter than the {HEADER_LEN}-byte header",
                bytes.len()
            )));
        }
        if &bytes[..4] != FEATURE_MAGIC {
            return Err(CncError::Format(format!("{video_id}: bad magic")));
        }
        let version = read_u32(bytes, 4);
        if version != FEATURE_VERSION {
            return Err(CncError::Format(format!(
                "{video_id}: unsupported feature version {version}"
            )));
        }
        let t = read_u32(bytes, 8) as usize;
        let d = read_u32(bytes, 12) as usize;
        let fps = f64::from_le_bytes(bytes[16..24].try_into().unwrap());
        let count = t
            .checked_mul(d)
            .ok_or_else(|| CncError::Length(format!("{video_id}: T*D overflows")))?;
        let expected = HEADER_LEN + 8 * count;
        if bytes.len() != expected {
            return Err(CncError::Length(format!(
                "{video_id}: expected {expected} bytes for {t}x{d} features, found {}",
                bytes.len()
            )));
        }
        let data = bytes[HEADER_LEN..]
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        FeatureSequence::new(video_id, Matrix::from_vec(t, d, data)?, fps)
    }
}

fn read_u32(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap())
}

/// Reads a feature file. The video id is the file stem.
pub fn load_features(path: impl AsRef<Path>) -> Result<FeatureSequence> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| CncError::io(path, e))?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    FeatureSequence::from_bytes(id, &bytes)
}

pub fn save_features(seq: &FeatureSequence, path: impl AsRef<Path>) -> Result<()> {
    crate::io::write_atomic(path.as_ref(), &seq.to_bytes())
}
