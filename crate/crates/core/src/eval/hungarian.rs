//! Minimum-cost assignment (Hungarian / Kuhn-Munkres with potentials).

use crate::error::{CncError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    /// Column assigned to each original row; `None` when the row was matched
    /// to a zero padding column.
    pub row_to_col: Vec<Option<usize>>,
    pub cost: f64,
}

/// Solves the assignment problem on `cost` (rows may differ in count from
/// columns; the matrix is zero-padded to square). Among all optimal
/// assignments the lexicographically smallest column sequence is returned.
pub fn hungarian(cost: &[Vec<f64>]) -> Result<Assignment> {
    let n = cost.len();
    let m = cost.first().map_or(0, Vec::len);
    if n == 0 || m == 0 {
        return Err(CncError::Domain("assignment needs a non-empty cost matrix".into()));
    }
    if cost.iter().any(|r| r.len() != m) {
        return Err(CncError::Shape("cost matrix rows differ in length".into()));
    }
    if cost.iter().flatten().any(|c| !c.is_finite()) {
        return Err(CncError::Value("cost matrix has a non-finite entry".into()));
    }
    let size = n.max(m);
    let mut square = vec![vec![0.0; size]; size];
    for (i, row) in cost.iter().enumerate() {
        square[i][..m].copy_from_slice(row);
    }
    let scale = square.iter().flatten().fold(1.0f64, |a, c| a.max(c.abs()));
    let tol = 1e-12 * scale * size as f64;

    let rows: Vec<usize> = (0..size).collect();
    let mut free_cols: Vec<usize> = (0..size).collect();
    let mut remaining = solve_subproblem(&square, &rows, &free_cols);
    let mut chosen = Vec::with_capacity(size);
    for r in 0..size {
        let rest = &rows[r + 1..];
        let mut picked = None;
        for (slot, &c) in free_cols.iter().enumerate() {
            let mut others = free_cols.clone();
            others.remove(slot);
            let sub = solve_subproblem(&square, rest, &others);
            if (square[r][c] + sub - remaining).abs() <= tol {
                picked = Some((slot, c, sub));
                break;
            }
        }
        // Some column always reproduces the optimum; the fallback guards rounding.
        let (slot, c, sub) = picked.unwrap_or_else(|| {
            let (slot, &c) = free_cols
                .iter()
                .enumerate()
                .min_by(|a, b| square[r][*a.1].total_cmp(&square[r][*b.1]))
                .unwrap();
            let mut others = free_cols.clone();
            others.remove(slot);
            (slot, c, solve_subproblem(&square, rest, &others))
        });
        chosen.push(c);
        free_cols.remove(slot);
        remaining = sub;
    }

    let row_to_col: Vec<Option<usize>> = chosen[..n].iter().map(|&c| (c < m).then_some(c)).collect();
    let total = row_to_col
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|c| cost[i][c]))
        .sum();
    Ok(Assignment {
        row_to_col,
        cost: total,
    })
}

/// Optimal cost of assigning `rows` to `cols` (equal counts) within `cost`.
fn solve_subproblem(cost: &[Vec<f64>], rows: &[usize], cols: &[usize]) -> f64 {
    let k = rows.len();
    if k == 0 {
        return 0.0;
    }
    let sub: Vec<Vec<f64>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| cost[r][c]).collect())
        .collect();
    let cols_of = solve_square(&sub);
    cols_of.iter().enumerate().map(|(i, &j)| sub[i][j]).sum()
}

/// O(n^3) shortest augmenting path solver on a square matrix.
pub(crate) fn solve_square(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut out = vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            out[p[j] - 1] = j - 1;
        }
    }
    out
}
