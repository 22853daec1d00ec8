//! Cycle-back regression with variance between two embedded sequences.
//!
//! For frame `i` of `a`: soft nearest neighbour `v` in `b` under
//! `softmax(-|a_i - b_j|^2 / tau)`, then cycle back to `a` with
//! `beta = softmax(-|v - a_k|^2 / tau)`. The regression target is the raw
//! frame index: `mu = sum k beta_k`, `var = max(eps, sum beta_k (k - mu)^2)`
//! and the frame loss is `(i - mu)^2 / var + lambda_var * ln(var)`.

use crate::error::{CncError, Result};
use crate::matrix::{sq_dist, Matrix};

/// Loss value with gradients for both inputs.
#[derive(Debug, Clone)]
pub struct PairLoss {
    pub loss: f64,
    pub grad_a: Matrix,
    pub grad_b: Matrix,
}

/// In-place numerically stable softmax of `logits`.
pub(crate) fn softmax_in_place(logits: &mut [f64]) {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for l in logits.iter_mut() {
        *l = (*l - max).exp();
        sum += *l;
    }
    for l in logits.iter_mut() {
        *l /= sum;
    }
}

/// Mean cycle-back loss over the frames of `a`, with exact gradients.
pub fn tcc_loss(
    a: &Matrix,
    b: &Matrix,
    temperature: f64,
    variance_weight: f64,
    variance_floor: f64,
) -> Result<PairLoss> {
    let (n, m, e) = (a.rows(), b.rows(), a.cols());
    if n == 0 || m == 0 {
        return Err(CncError::Domain(
            "tcc_loss needs at least one frame per sequence".into(),
        ));
    }
    if b.cols() != e {
        return Err(CncError::Shape(format!(
            "embedding widths differ: {} vs {}",
            e,
            b.cols()
        )));
    }
    if !(temperature > 0.0 && variance_floor > 0.0) {
        return Err(CncError::Domain(
            "temperature and variance floor must be positive".into(),
        ));
    }

    let mut grad_a = Matrix::zeros(n, e);
    let mut grad_b = Matrix::zeros(m, e);
    let mut total = 0.0;
    let inv_n = 1.0 / n as f64;
    let scale = 2.0 / temperature;

    let mut alpha = vec![0.0; m];
    let mut beta = vec![0.0; n];
    let mut soft = vec![0.0; e];
    let mut g_soft = vec![0.0; e];
    let mut g_alpha = vec![0.0; m];

    for i in 0..n {
        let ai = a.row(i);

        for (j, al) in alpha.iter_mut().enumerate() {
            *al = -sq_dist(ai, b.row(j)) / temperature;
        }
        softmax_in_place(&mut alpha);

        soft.iter_mut().for_each(|s| *s = 0.0);
        for (j, &al) in alpha.iter().enumerate() {
            for (s, bj) in soft.iter_mut().zip(b.row(j)) {
                *s += al * bj;
            }
        }

        for (k, be) in beta.iter_mut().enumerate() {
            *be = -sq_dist(&soft, a.row(k)) / temperature;
        }
        softmax_in_place(&mut beta);

        let mu: f64 = beta.iter().enumerate().map(|(k, be)| k as f64 * be).sum();
        let raw_var: f64 = beta
            .iter()
            .enumerate()
            .map(|(k, be)| be * (k as f64 - mu).powi(2))
            .sum();
        let clamped = raw_var < variance_floor;
        let var = if clamped { variance_floor } else { raw_var };
        let diff = i as f64 - mu;
        let frame_loss = diff * diff / var + variance_weight * var.ln();
        if !frame_loss.is_finite() {
            return Err(CncError::Numeric {
                frame: i,
                what: format!("non-finite cycle-back loss (mu={mu}, var={var})"),
            });
        }
        total += frame_loss;

        // Backward, already scaled by 1/n for the mean.
        let g_mu = -2.0 * diff / var * inv_n;
        let g_var = if clamped {
            0.0
        } else {
            (-diff * diff / (var * var) + variance_weight / var) * inv_n
        };

        // d var / d beta_k = (k - mu)^2 once the d mu path is folded in.
        let g_beta = |k: usize| g_mu * k as f64 + g_var * (k as f64 - mu).powi(2);
        let mean_g_beta: f64 = beta.iter().enumerate().map(|(k, be)| be * g_beta(k)).sum();

        g_soft.iter_mut().for_each(|g| *g = 0.0);
        for (k, &be) in beta.iter().enumerate() {
            let g_logit = be * (g_beta(k) - mean_g_beta);
            if g_logit == 0.0 {
                continue;
            }
            let ak = a.row(k);
            let ga = grad_a.row_mut(k);
            for d in 0..e {
                let delta = scale * g_logit * (soft[d] - ak[d]);
                g_soft[d] -= delta;
                ga[d] += delta;
            }
        }

        for (j, ga) in g_alpha.iter_mut().enumerate() {
            let bj = b.row(j);
            *ga = g_soft.iter().zip(bj).map(|(g, x)| g * x).sum();
            let al = alpha[j];
            let gb = grad_b.row_mut(j);
            for d in 0..e {
                gb[d] += al * g_soft[d];
            }
        }
        let mean_g_alpha: f64 = alpha.iter().zip(&g_alpha).map(|(al, g)| al * g).sum();
        for j in 0..m {
            let g_logit = alpha[j] * (g_alpha[j] - mean_g_alpha);
            if g_logit == 0.0 {
                continue;
            }
            let bj = b.row(j);
            for d in 0..e {
                let delta = scale * g_logit * (ai[d] - bj[d]);
                grad_a.row_mut(i)[d] -= delta;
                grad_b.row_mut(j)[d] += delta;
            }
        }
    }

    Ok(PairLoss {
        loss: total * inv_n,
        grad_a,
        grad_b,
    })
}
