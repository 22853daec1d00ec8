//! Two-terminal energy graph and its exact minimisation by max-flow.
//!
//! The source terminal stands for "key-step" and the sink for "background".
//! A node left on the sink side cuts its source t-link, so `source_cap` is the
//! cost of labelling the node background and `sink_cap` the cost of labelling
//! it key-step. Neighbour links are undirected Potts terms.

use std::collections::VecDeque;

use crate::error::{CncError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyGraph {
    pub node_count: usize,
    pub source_cap: Vec<f64>,
    pub sink_cap: Vec<f64>,
    pub n_links: Vec<(usize, usize, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutResult {
    /// 1 = key-step (source side), 0 = background (sink side).
    pub labels: Vec<u8>,
    pub cut_value: f64,
    pub flow_value: f64,
}

impl EnergyGraph {
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count;
        if self.source_cap.len() != n || self.sink_cap.len() != n {
            return Err(CncError::Validation(format!("t-link vectors must have {n} entries")));
        }
        let bad_cap = |c: f64| !(c.is_finite() && c >= 0.0);
        if self.source_cap.iter().chain(&self.sink_cap).any(|&c| bad_cap(c)) {
            return Err(CncError::Validation("t-link capacity must be finite and >= 0".into()));
        }
        for &(u, v, c) in &self.n_links {
            if u == v || u >= n || v >= n || bad_cap(c) {
                return Err(CncError::Validation(format!("invalid n-link ({u}, {v}, {c})")));
            }
        }
        Ok(())
    }

    /// Energy of a binary labelling; equals the capacity of the matching cut.
    pub fn energy(&self, labels: &[u8]) -> f64 {
        let unary: f64 = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| if l == 1 { self.sink_cap[i] } else { self.source_cap[i] })
            .sum();
        let pairwise: f64 = self
            .n_links
            .iter()
            .filter(|&&(u, v, _)| labels[u] != labels[v])
            .map(|&(_, _, c)| c)
            .sum();
        unary + pairwise
    }
}

/// Builds the graph for per-frame correspondence scores in `[-1, 1]`.
///
/// With `c = (score + 1) / 2`, labelling a frame background costs `c` and
/// labelling it key-step costs `1 - c + background_bias`. Both t-links are
/// shifted down by their minimum so one of them is zero. Adjacent frames of
/// the same video are joined by an n-link of capacity `smoothness`.
pub fn build_energy_graph(
    scores: &[f64],
    video_lengths: &[usize],
    smoothness: f64,
    background_bias: f64,
) -> Result<EnergyGraph> {
    let total: usize = video_lengths.iter().sum();
    if total != scores.len() {
        return Err(CncError::Shape(format!(
            "{} scores for videos totalling {total} frames",
            scores.len()
        )));
    }
    if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
        return Err(CncError::Value(format!("score of frame {i} is not finite")));
    }
    if !(smoothness.is_finite() && smoothness >= 0.0 && background_bias.is_finite()) {
        return Err(CncError::Domain(
            "smoothness must be finite and >= 0, background bias finite".into(),
        ));
    }

    let mut source_cap = Vec::with_capacity(total);
    let mut sink_cap = Vec::with_capacity(total);
    for &s in scores {
        let c = (s + 1.0) / 2.0;
        let background = c;
        let keystep = 1.0 - c + background_bias;
        let floor = background.min(keystep);
        source_cap.push((background - floor).max(0.0));
        sink_cap.push((keystep - floor).max(0.0));
    }

    let mut n_links = Vec::new();
    if smoothness > 0.0 {
        let mut offset = 0;
        for &len in video_lengths {
            for i in offset..(offset + len).saturating_sub(1) {
                n_links.push((i, i + 1, smoothness));
            }
            offset += len;
        }
    }

    Ok(EnergyGraph {
        node_count: total,
        source_cap,
        sink_cap,
        n_links,
    })
}

struct Arc {
    to: usize,
    cap: f64,
    rev: usize,
}

/// Exact s-t min cut by Dinic's algorithm.
///
/// Adjacency lists are ordered by head node index, so augmentation order and
/// the returned labelling are deterministic. Nodes reachable from the source
/// in the final residual graph are labelled key-step; this is the smallest
/// minimum-energy source set, so ties resolve to background.
pub fn min_cut(graph: &EnergyGraph) -> Result<CutResult> {
    graph.validate()?;
    let n = graph.node_count;
    let (s, t) = (n, n + 1);

    // Direct s -> i -> t paths carry min(source, sink) before any search.
    let mut flow_value = 0.0;
    let mut src = graph.source_cap.clone();
    let mut snk = graph.sink_cap.clone();
    for i in 0..n {
        let m = src[i].min(snk[i]);
        flow_value += m;
        src[i] -= m;
        snk[i] -= m;
    }

    let max_cap = src
        .iter()
        .chain(&snk)
        .chain(graph.n_links.iter().map(|(_, _, c)| c))
        .fold(1.0f64, |a, &b| a.max(b));
    let eps = 1e-12 * max_cap;

    let mut edges: Vec<(usize, usize, f64, f64)> = Vec::new();
    for i in 0..n {
        if src[i] > 0.0 {
            edges.push((s, i, src[i], 0.0));
        }
        if snk[i] > 0.0 {
            edges.push((i, t, snk[i], 0.0));
        }
    }
    for &(u, v, c) in &graph.n_links {
        if c > 0.0 {
            edges.push((u, v, c, c));
        }
    }

    let mut adj: Vec<Vec<Arc>> = (0..n + 2).map(|_| Vec::new()).collect();
    // Insert in order of head index so every adjacency list is sorted.
    let mut half: Vec<(usize, usize, f64, usize)> = Vec::with_capacity(2 * edges.len());
    for (idx, &(u, v, c, rc)) in edges.iter().enumerate() {
        half.push((u, v, c, 2 * idx));
        half.push((v, u, rc, 2 * idx + 1));
    }
    half.sort_by_key(|&(u, v, _, id)| (u, v, id));
    let mut position = vec![(0usize, 0usize); half.len()];
    for &(u, v, c, id) in &half {
        position[id] = (u, adj[u].len());
        adj[u].push(Arc { to: v, cap: c, rev: 0 });
    }
    for idx in 0..edges.len() {
        let (u, pu) = position[2 * idx];
        let (v, pv) = position[2 * idx + 1];
        adj[u][pu].rev = pv;
        adj[v][pv].rev = pu;
    }

    let mut level = vec![usize::MAX; n + 2];
    let mut cursor = vec![0usize; n + 2];
    loop {
        level.iter_mut().for_each(|l| *l = usize::MAX);
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for a in &adj[u] {
                if a.cap > eps && level[a.to] == usize::MAX {
                    level[a.to] = level[u] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        if level[t] == usize::MAX {
            break;
        }
        cursor.iter_mut().for_each(|c| *c = 0);
        loop {
            let pushed = augment(&mut adj, &level, &mut cursor, s, t, f64::INFINITY, eps);
            if pushed <= eps {
                break;
            }
            flow_value += pushed;
        }
    }

    let mut labels = vec![0u8; n];
    let mut seen = vec![false; n + 2];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for a in &adj[u] {
            if a.cap > eps && !seen[a.to] {
                seen[a.to] = true;
                stack.push(a.to);
            }
        }
    }
    for (i, l) in labels.iter_mut().enumerate() {
        *l = u8::from(seen[i]);
    }

    Ok(CutResult {
        cut_value: graph.energy(&labels),
        labels,
        flow_value,
    })
}

/// Blocking-flow DFS along the level graph with per-node cursors.
fn augment(
    adj: &mut [Vec<Arc>],
    level: &[usize],
    cursor: &mut [usize],
    u: usize,
    t: usize,
    limit: f64,
    eps: f64,
) -> f64 {
    if u == t {
        return limit;
    }
    while cursor[u] < adj[u].len() {
        let i = cursor[u];
        let (to, cap) = (adj[u][i].to, adj[u][i].cap);
        if cap > eps && level[to] == level[u] + 1 {
            let pushed = augment(adj, level, cursor, to, t, limit.min(cap), eps);
            if pushed > eps {
                adj[u][i].cap -= pushed;
                let rev = adj[u][i].rev;
                adj[to][rev].cap += pushed;
                return pushed;
            }
        }
        cursor[u] += 1;
    }
    0.0
}
