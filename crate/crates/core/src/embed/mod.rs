//! Frame embedder (two-layer tanh perceptron, unit-normalised output) and the
//! TC3I objective: symmetric cycle-back regression between two videos plus a
//! contrastive temporal-coherence term inside each video.

mod cidm;
mod params;
mod tcc;
mod train;

pub use cidm::{cidm_loss, SeqLoss};
pub use params::{EmbedderParams, ParamGrads, PARAMS_MAGIC, PARAMS_VERSION};
pub use tcc::{tcc_loss, PairLoss};
pub use train::{loss_trace_csv, mean_tc3i_loss, train_embedder, Trained};

use std::fmt;
use std::str::FromStr;

use crate::error::{CncError, Result};
use crate::features::FeatureSequence;
use crate::matrix::{dot, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairStrategy {
    /// Cycle through every unordered pair `(i, j)`, `i < j`, in order.
    AllPairs,
    /// Draw two distinct videos from the seeded generator each step.
    RandomPair,
}

impl FromStr for PairStrategy {
    type Err = CncError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-pairs" => Ok(PairStrategy::AllPairs),
            "random-pair" => Ok(PairStrategy::RandomPair),
            other => Err(CncError::Config(format!(
                "pair_strategy must be all-pairs or random-pair, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for PairStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairStrategy::AllPairs => "all-pairs",
            PairStrategy::RandomPair => "random-pair",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub steps: usize,
    /// Softmax temperature of the cycle-back similarities.
    pub temperature: f64,
    pub variance_weight: f64,
    pub variance_floor: f64,
    /// Temporal neighbourhood radius of the coherence term.
    pub cidm_window: usize,
    pub cidm_margin: f64,
    pub cidm_weight: f64,
    pub hidden_dim: usize,
    pub embed_dim: usize,
    pub seed: u64,
    pub pair_strategy: PairStrategy,
    /// Frames drawn (sorted, without replacement) from each video of the pair
    /// at every step; 0 trains on whole videos.
    pub frames_per_step: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 1e-2,
            steps: 200,
            temperature: 0.1,
            variance_weight: 1e-3,
            variance_floor: 1e-6,
            cidm_window: 5,
            cidm_margin: 2.0,
            cidm_weight: 1.0,
            hidden_dim: 32,
            embed_dim: 16,
            seed: 0,
            pair_strategy: PairStrategy::AllPairs,
            frames_per_step: 32,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(CncError::Config(format!("{name} must be positive, got {v}")))
            }
        };
        positive("learning_rate", self.learning_rate)?;
        positive("temperature", self.temperature)?;
        positive("variance_floor", self.variance_floor)?;
        positive("cidm_margin", self.cidm_margin)?;
        if !(self.variance_weight >= 0.0 && self.cidm_weight >= 0.0) {
            return Err(CncError::Config(
                "variance_weight and cidm_weight must be non-negative".into(),
            ));
        }
        if self.cidm_window == 0 {
            return Err(CncError::Config("cidm_window must be at least 1".into()));
        }
        if self.frames_per_step == 1 {
            return Err(CncError::Config(
                "frames_per_step must be 0 (whole videos) or at least 2".into(),
            ));
        }
        if self.hidden_dim == 0 || self.embed_dim < 2 {
            return Err(CncError::Config("hidden_dim must be >= 1 and embed_dim >= 2".into()));
        }
        Ok(())
    }
}

/// Forward activations kept for backpropagation.
#[derive(Debug, Clone)]
pub struct EmbedCache {
    hidden: Matrix,
    norms: Vec<f64>,
    pub output: Matrix,
}

/// Embeds every frame and L2-normalises each row.
pub fn embed_sequence(params: &EmbedderParams, features: &FeatureSequence) -> Result<Matrix> {
    Ok(embed_forward(params, &features.features)?.output)
}

pub fn embed_forward(params: &EmbedderParams, x: &Matrix) -> Result<EmbedCache> {
    let (d, h, e) = params.dims();
    if x.cols() != d {
        return Err(CncError::Shape(format!(
            "features have {} dims, embedder expects {d}",
            x.cols()
        )));
    }
    let t = x.rows();
    let mut hidden = Matrix::zeros(t, h);
    let mut output = Matrix::zeros(t, e);
    let mut norms = Vec::with_capacity(t);
    for i in 0..t {
        let xi = x.row(i);
        let hi = hidden.row_mut(i);
        for (r, hv) in hi.iter_mut().enumerate() {
            *hv = (dot(params.w1.row(r), xi) + params.b1[r]).tanh();
        }
        let hi = hidden.row(i);
        let oi = output.row_mut(i);
        for (r, ov) in oi.iter_mut().enumerate() {
            *ov = dot(params.w2.row(r), hi) + params.b2[r];
        }
        let n = dot(oi, oi).sqrt();
        if !(n > 0.0 && n.is_finite()) {
            return Err(CncError::Value(format!(
                "frame {i}: embedding norm {n} cannot be normalised"
            )));
        }
        oi.iter_mut().for_each(|v| *v /= n);
        norms.push(n);
    }
    Ok(EmbedCache { hidden, norms, output })
}

/// Accumulates parameter gradients given `d loss / d output` for one sequence.
pub fn embed_backward(
    params: &EmbedderParams,
    x: &Matrix,
    cache: &EmbedCache,
    grad_out: &Matrix,
    grads: &mut ParamGrads,
) {
    let (_, h, e) = params.dims();
    let mut g_z2 = vec![0.0; e];
    let mut g_z1 = vec![0.0; h];
    for i in 0..x.rows() {
        let out = cache.output.row(i);
        let go = grad_out.row(i);
        let proj = dot(out, go);
        let n = cache.norms[i];
        for ((g, o), v) in g_z2.iter_mut().zip(go).zip(out) {
            *g = (o - v * proj) / n;
        }
        let hi = cache.hidden.row(i);
        for (r, &g) in g_z2.iter().enumerate() {
            grads.b2[r] += g;
            for (gw, hv) in grads.w2.row_mut(r).iter_mut().zip(hi) {
                *gw += g * hv;
            }
        }
        for (c, (gz, hv)) in g_z1.iter_mut().zip(hi).enumerate() {
            let acc: f64 = g_z2.iter().enumerate().map(|(r, g)| params.w2.get(r, c) * g).sum();
            *gz = acc * (1.0 - hv * hv);
        }
        let xi = x.row(i);
        for (c, &g) in g_z1.iter().enumerate() {
            grads.b1[c] += g;
            for (gw, xv) in grads.w1.row_mut(c).iter_mut().zip(xi) {
                *gw += g * xv;
            }
        }
    }
}

/// `tcc(A,B) + tcc(B,A) + cidm_weight * (cidm(A) + cidm(B))`.
pub fn tc3i_loss(a: &Matrix, b: &Matrix, config: &TrainConfig) -> Result<PairLoss> {
    let ab = tcc_loss(a, b, config.temperature, config.variance_weight, config.variance_floor)?;
    let ba = tcc_loss(b, a, config.temperature, config.variance_weight, config.variance_floor)?;
    let mut loss = ab.loss + ba.loss;
    let mut grad_a = ab.grad_a;
    let mut grad_b = ab.grad_b;
    add_into(&mut grad_a, &ba.grad_b, 1.0);
    add_into(&mut grad_b, &ba.grad_a, 1.0);
    if config.cidm_weight != 0.0 {
        let ca = cidm_loss(a, config.cidm_window, config.cidm_margin)?;
        let cb = cidm_loss(b, config.cidm_window, config.cidm_margin)?;
        loss += config.cidm_weight * (ca.loss + cb.loss);
        add_into(&mut grad_a, &ca.grad, config.cidm_weight);
        add_into(&mut grad_b, &cb.grad, config.cidm_weight);
    }
    Ok(PairLoss { loss, grad_a, grad_b })
}

fn add_into(acc: &mut Matrix, other: &Matrix, scale: f64) {
    for (a, o) in acc.as_mut_slice().iter_mut().zip(other.as_slice()) {
        *a += scale * o;
    }
}
