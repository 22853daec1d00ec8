use rayon::prelude::*;

use crate::error::{CncError, Result};
use crate::matrix::{dot, Matrix};

/// For frame `i` of video `v`: the mean, over every other video, of the best
/// cosine similarity between `e_i` and any frame of that video.
///
/// Rows are expected to be unit-normalised, so cosine is a dot product; the
/// result is clamped to `[-1, 1]` against rounding.
pub fn correspondence_scores(embeddings: &[&Matrix]) -> Result<Vec<Vec<f64>>> {
    if embeddings.len() < 2 {
        return Err(CncError::Domain(format!(
            "correspondence needs at least 2 videos, got {}",
            embeddings.len()
        )));
    }
    let e = embeddings[0].cols();
    if embeddings.iter().any(|m| m.cols() != e || m.rows() == 0) {
        return Err(CncError::Shape(
            "embeddings must share a width and have at least one frame".into(),
        ));
    }
    let others = (embeddings.len() - 1) as f64;
    Ok(embeddings
        .iter()
        .enumerate()
        .map(|(v, own)| {
            (0..own.rows())
                .into_par_iter()
                .map(|i| {
                    let row = own.row(i);
                    let sum: f64 = embeddings
                        .iter()
                        .enumerate()
                        .filter(|&(w, _)| w != v)
                        .map(|(_, other)| other.iter_rows().map(|r| dot(row, r)).fold(f64::NEG_INFINITY, f64::max))
                        .sum();
                    (sum / others).clamp(-1.0, 1.0)
                })
                .collect()
        })
        .collect())
}
