//! Contrastive temporal-coherence regulariser over one embedded sequence.
//!
//! With `W(i,j) = 1 / (1 + (i-j)^2)` and `d = |u_i - u_j|`, pairs within the
//! window contribute `W d^2` and pairs outside it contribute
//! `max(0, margin - d)^2 / W`. The loss is the mean over pairs `i < j`.

use crate::error::{CncError, Result};
use crate::matrix::{sq_dist, Matrix};

#[derive(Debug, Clone)]
pub struct SeqLoss {
    pub loss: f64,
    pub grad: Matrix,
}

pub fn cidm_loss(u: &Matrix, window: usize, margin: f64) -> Result<SeqLoss> {
    let t = u.rows();
    if t < 2 {
        return Err(CncError::Domain(format!("cidm_loss needs at least 2 frames, got {t}")));
    }
    let e = u.cols();
    let pairs = (t * (t - 1) / 2) as f64;
    let mut grad = Matrix::zeros(t, e);
    let mut total = 0.0;

    for i in 0..t {
        for j in (i + 1)..t {
            let gap = (j - i) as f64;
            let weight = 1.0 / (1.0 + gap * gap);
            let d2 = sq_dist(u.row(i), u.row(j));
            // d(term)/d(u_i) = coef * (u_i - u_j)
            let coef = if j - i <= window {
                total += weight * d2;
                2.0 * weight
            } else {
                let d = d2.sqrt();
                let hinge = margin - d;
                if hinge <= 0.0 {
                    continue;
                }
                total += hinge * hinge / weight;
                if d == 0.0 {
                    // Subgradient 0 at coincident points.
                    continue;
                }
                -2.0 * hinge / (weight * d)
            };
            let coef = coef / pairs;
            for k in 0..e {
                let diff = u.get(i, k) - u.get(j, k);
                grad.row_mut(i)[k] += coef * diff;
                grad.row_mut(j)[k] -= coef * diff;
            }
        }
    }

    Ok(SeqLoss {
        loss: total / pairs,
        grad,
    })
}
