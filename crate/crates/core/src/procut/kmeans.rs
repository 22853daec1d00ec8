//! Lloyd k-means with k-means++ seeding, best of several seeded restarts.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CncError, Result};
use crate::matrix::{sq_dist, Matrix};

const MAX_ITERS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    /// Cluster label per point, in `1..=K`.
    pub labels: Vec<usize>,
    pub centroids: Matrix,
    pub inertia: f64,
}

/// Sum of squared distances from each point to the mean of its cluster.
pub fn labelling_inertia(points: &Matrix, labels: &[usize]) -> f64 {
    let k = labels.iter().copied().max().unwrap_or(0);
    let means = cluster_means(points, labels, k);
    labels
        .iter()
        .enumerate()
        .map(|(i, &l)| sq_dist(points.row(i), means.row(l - 1)))
        .sum()
}

fn cluster_means(points: &Matrix, labels: &[usize], k: usize) -> Matrix {
    let mut sums = Matrix::zeros(k, points.cols());
    let mut counts = vec![0usize; k];
    for (i, &l) in labels.iter().enumerate() {
        counts[l - 1] += 1;
        for (s, x) in sums.row_mut(l - 1).iter_mut().zip(points.row(i)) {
            *s += x;
        }
    }
    for (c, &n) in counts.iter().enumerate() {
        if n > 0 {
            sums.row_mut(c).iter_mut().for_each(|s| *s /= n as f64);
        }
    }
    sums
}

/// Clusters the rows of `points` into `k` groups.
///
/// With fewer points than `k`, each point becomes its own cluster and the
/// remaining labels stay unused.
pub fn cluster_foreground(points: &Matrix, k: usize, restarts: usize, seed: u64) -> Result<Clustering> {
    if k < 1 {
        return Err(CncError::Domain("K must be at least 1".into()));
    }
    let n = points.rows();
    if n == 0 {
        return Err(CncError::Domain("no points to cluster".into()));
    }
    if n <= k {
        return Ok(Clustering {
            labels: (1..=n).collect(),
            centroids: points.clone(),
            inertia: 0.0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Clustering> = None;
    for _ in 0..restarts.max(1) {
        let centroids = plus_plus_seeds(points, k, &mut rng);
        let run = lloyd(points, centroids);
        if best.as_ref().is_none_or(|b| run.inertia < b.inertia) {
            best = Some(run);
        }
    }
    Ok(best.unwrap())
}

fn plus_plus_seeds(points: &Matrix, k: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let n = points.rows();
    let mut centroids = Matrix::zeros(k, points.cols());
    let first = rng.gen_range(0..n);
    centroids.row_mut(0).copy_from_slice(points.row(first));
    let mut nearest: Vec<f64> = (0..n).map(|i| sq_dist(points.row(i), points.row(first))).collect();
    for c in 1..k {
        let pick = match WeightedIndex::new(&nearest) {
            Ok(dist) => dist.sample(rng),
            // Every point already coincides with a centroid.
            Err(_) => rng.gen_range(0..n),
        };
        centroids.row_mut(c).copy_from_slice(points.row(pick));
        for (i, d) in nearest.iter_mut().enumerate() {
            *d = d.min(sq_dist(points.row(i), centroids.row(c)));
        }
    }
    centroids
}

fn nearest_centroid(point: &[f64], centroids: &Matrix) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for c in 0..centroids.rows() {
        let d = sq_dist(point, centroids.row(c));
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

fn lloyd(points: &Matrix, mut centroids: Matrix) -> Clustering {
    let n = points.rows();
    let k = centroids.rows();
    let mut labels = vec![0usize; n];
    for iter in 0..MAX_ITERS {
        let mut changed = false;
        for (i, l) in labels.iter_mut().enumerate() {
            let c = nearest_centroid(points.row(i), &centroids).0 + 1;
            if *l != c {
                *l = c;
                changed = true;
            }
        }
        if !changed && iter > 0 {
            break;
        }
        let means = cluster_means(points, &labels, k);
        let mut counts = vec![0usize; k];
        labels.iter().for_each(|&l| counts[l - 1] += 1);
        for (c, &count) in counts.iter().enumerate() {
            // Empty clusters keep their previous centroid.
            if count > 0 {
                centroids.row_mut(c).copy_from_slice(means.row(c));
            }
        }
    }
    let inertia = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| sq_dist(points.row(i), centroids.row(l - 1)))
        .sum();
    Clustering {
        labels,
        centroids,
        inertia,
    }
}
