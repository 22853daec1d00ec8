use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{embed_backward, embed_forward, tc3i_loss, EmbedderParams, PairStrategy, ParamGrads, TrainConfig};
use crate::error::{CncError, Result};
use crate::features::FeatureSequence;
use crate::matrix::Matrix;

#[derive(Debug, Clone)]
pub struct Trained {
    pub params: EmbedderParams,
    /// TC3I loss of the sampled pair at each step, before that step's update.
    pub loss_trace: Vec<f64>,
}

fn check_dataset(dataset: &[FeatureSequence]) -> Result<usize> {
    if dataset.len() < 2 {
        return Err(CncError::Domain(format!(
            "training needs at least 2 videos, got {}",
            dataset.len()
        )));
    }
    let d = dataset[0].dim();
    if let Some(bad) = dataset.iter().find(|s| s.dim() != d) {
        return Err(CncError::Shape(format!(
            "video {} has {} feature dims, expected {d}",
            bad.video_id,
            bad.dim()
        )));
    }
    Ok(d)
}

/// Sorted random subset of `m` rows, or the whole matrix when it is short
/// enough or `m` is 0.
fn sample_frames(x: &Matrix, m: usize, rng: &mut ChaCha8Rng) -> Matrix {
    if m == 0 || x.rows() <= m {
        return x.clone();
    }
    let mut picked = index::sample(rng, x.rows(), m).into_vec();
    picked.sort_unstable();
    let mut out = Matrix::zeros(m, x.cols());
    for (dst, &src) in picked.iter().enumerate() {
        out.row_mut(dst).copy_from_slice(x.row(src));
    }
    out
}

/// Plain gradient descent on the TC3I loss, one video pair per step.
pub fn train_embedder(dataset: &[FeatureSequence], config: &TrainConfig) -> Result<Trained> {
    config.validate()?;
    let d = check_dataset(dataset)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut params = EmbedderParams::init_with(d, config.hidden_dim, config.embed_dim, &mut rng);

    let n = dataset.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();

    let mut loss_trace = Vec::with_capacity(config.steps);
    for step in 0..config.steps {
        let (i, j) = match config.pair_strategy {
            PairStrategy::AllPairs => pairs[step % pairs.len()],
            PairStrategy::RandomPair => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                (i, j)
            }
        };
        let xa = sample_frames(&dataset[i].features, config.frames_per_step, &mut rng);
        let xb = sample_frames(&dataset[j].features, config.frames_per_step, &mut rng);
        let (xa, xb) = (&xa, &xb);
        let (ca, cb) = rayon::join(|| embed_forward(&params, xa), || embed_forward(&params, xb));
        let (ca, cb) = (ca?, cb?);
        let pair = tc3i_loss(&ca.output, &cb.output, config)?;
        loss_trace.push(pair.loss);

        let (d, h, e) = params.dims();
        let mut grads = ParamGrads::zeros(d, h, e);
        embed_backward(&params, xa, &ca, &pair.grad_a, &mut grads);
        embed_backward(&params, xb, &cb, &pair.grad_b, &mut grads);
        params.descend(&grads, config.learning_rate);
        if params.values().any(|v| !v.is_finite()) {
            return Err(CncError::Numeric {
                frame: 0,
                what: format!("parameters diverged at step {step}"),
            });
        }
    }
    Ok(Trained { params, loss_trace })
}

/// Mean TC3I loss over every unordered pair of videos, on whole videos.
pub fn mean_tc3i_loss(params: &EmbedderParams, dataset: &[FeatureSequence], config: &TrainConfig) -> Result<f64> {
    check_dataset(dataset)?;
    let embedded = dataset
        .iter()
        .map(|s| embed_forward(params, &s.features).map(|c| c.output))
        .collect::<Result<Vec<_>>>()?;
    let mut total = 0.0;
    let mut count = 0usize;
    for i in 0..embedded.len() {
        for j in (i + 1)..embedded.len() {
            total += tc3i_loss(&embedded[i], &embedded[j], config)?.loss;
            count += 1;
        }
    }
    Ok(total / count as f64)
}

/// `step,loss` CSV with six decimals.
pub fn loss_trace_csv(trace: &[f64]) -> String {
    let mut out = String::from("step,loss\n");
    for (i, l) in trace.iter().enumerate() {
        out.push_str(&format!("{i},{l:.6}\n"));
    }
    out
}
