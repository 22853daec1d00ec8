use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CncError, Result};
use crate::matrix::Matrix;

pub const PARAMS_MAGIC: &[u8; 4] = b"CNCP";
pub const PARAMS_VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 3 * 4;
const INIT_RANGE: f64 = 0.1;

/// Weights of the `D -> H -> E` perceptron.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbedderParams {
    pub w1: Matrix,
    pub b1: Vec<f64>,
    pub w2: Matrix,
    pub b2: Vec<f64>,
}

/// Gradient buffers with the same layout as [`EmbedderParams`].
pub type ParamGrads = EmbedderParams;

impl EmbedderParams {
    pub fn new(w1: Matrix, b1: Vec<f64>, w2: Matrix, b2: Vec<f64>) -> Result<Self> {
        let (h, e) = (w1.rows(), w2.rows());
        if w1.cols() == 0 || h == 0 || e < 2 {
            return Err(CncError::Shape(format!(
                "need D >= 1, H >= 1, E >= 2; got D={} H={h} E={e}",
                w1.cols()
            )));
        }
        if b1.len() != h || w2.cols() != h || b2.len() != e {
            return Err(CncError::Shape("inconsistent embedder parameter shapes".into()));
        }
        let p = EmbedderParams { w1, b1, w2, b2 };
        if p.values().any(|v| !v.is_finite()) {
            return Err(CncError::Value("non-finite embedder parameter".into()));
        }
        Ok(p)
    }

    /// Uniform draws in `[-0.1, 0.1]`, filled in declaration order.
    pub fn init(d: usize, h: usize, e: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::init_with(d, h, e, &mut rng)
    }

    pub(crate) fn init_with(d: usize, h: usize, e: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut p = Self::zeros(d, h, e);
        for v in p.values_mut() {
            *v = rng.gen_range(-INIT_RANGE..=INIT_RANGE);
        }
        p
    }

    pub fn zeros(d: usize, h: usize, e: usize) -> Self {
        EmbedderParams {
            w1: Matrix::zeros(h, d),
            b1: vec![0.0; h],
            w2: Matrix::zeros(e, h),
            b2: vec![0.0; e],
        }
    }

    /// `(D, H, E)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.w1.cols(), self.w1.rows(), self.w2.rows())
    }

    pub fn values(&self) -> impl Iterator<Item = &f64> {
        self.w1
            .as_slice()
            .iter()
            .chain(&self.b1)
            .chain(self.w2.as_slice())
            .chain(&self.b2)
    }

    pub fn values_mut(&mut self) -> impl Iterator<Item = &mut f64> {
        self.w1
            .as_mut_slice()
            .iter_mut()
            .chain(self.b1.iter_mut())
            .chain(self.w2.as_mut_slice().iter_mut())
            .chain(self.b2.iter_mut())
    }

    /// `self -= rate * grads`.
    pub fn descend(&mut self, grads: &ParamGrads, rate: f64) {
        for (p, g) in self.values_mut().zip(grads.values()) {
            *p -= rate * g;
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let (d, h, e) = self.dims();
        let mut out = Vec::with_capacity(HEADER_LEN + 8 * (h * d + h + e * h + e));
        out.extend_from_slice(PARAMS_MAGIC);
        out.extend_from_slice(&PARAMS_VERSION.to_le_bytes());
        for dim in [d, h, e] {
            out.extend_from_slice(&(dim as u32).to_le_bytes());
        }
        for v in self.values() {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(CncError::Length(format!(
                "parameter file has {} bytes, header needs {HEADER_LEN}",
                bytes.len()
            )));
        }
        if &bytes[..4] != PARAMS_MAGIC {
            return Err(CncError::Format("parameter file: bad magic".into()));
        }
        let word = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap()) as usize;
        if word(4) != PARAMS_VERSION as usize {
            return Err(CncError::Format(format!("unsupported parameter version {}", word(4))));
        }
        let (d, h, e) = (word(8), word(12), word(16));
        let mut p = Self::zeros(d, h, e);
        let count = h * d + h + e * h + e;
        if bytes.len() != HEADER_LEN + 8 * count {
            return Err(CncError::Length(format!(
                "parameter file: expected {} bytes for D={d} H={h} E={e}, found {}",
                HEADER_LEN + 8 * count,
                bytes.len()
            )));
        }
        let mut chunks = bytes[HEADER_LEN..].chunks_exact(8);
        for v in p.values_mut() {
            *v = f64::from_le_bytes(chunks.next().unwrap().try_into().unwrap());
        }
        let EmbedderParams { w1, b1, w2, b2 } = p;
        EmbedderParams::new(w1, b1, w2, b2)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        crate::io::write_atomic(path, &self.to_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(|e| CncError::io(path, e))?;
        Self::from_bytes(&bytes)
    }
}
