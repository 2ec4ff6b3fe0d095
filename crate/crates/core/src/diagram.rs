//! Persistence diagrams and the bottleneck distance between them.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::complex::{FilteredComplex, MAX_DIM};
use crate::persistence::PersistencePair;
use crate::weighting::TOP_WEIGHT;

/// Which classes a diagram collects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagramKind {
    Dim(usize),
    /// Union over dimensions 0 through 3.
    Total,
}

impl fmt::Display for DiagramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramKind::Dim(p) => write!(f, "{p}"),
            DiagramKind::Total => write!(f, "total"),
        }
    }
}

/// A point with multiplicity. Essential classes sit at death 1.0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramPoint {
    pub birth: f64,
    pub death: f64,
    pub multiplicity: usize,
    pub essential: bool,
}

impl DiagramPoint {
    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

/// A multiset of (birth, death) points, sorted by birth, death, then essential flag.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    pub kind: DiagramKind,
    pub points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    /// Aggregates `(birth, death, essential)` triples into points with multiplicity.
    pub fn from_triples(kind: DiagramKind, triples: impl IntoIterator<Item = (f64, f64, bool)>) -> Self {
        let mut counts: BTreeMap<(u64, u64, bool), usize> = BTreeMap::new();
        for (b, d, ess) in triples {
            *counts.entry((ordered_bits(b), ordered_bits(d), ess)).or_insert(0) += 1;
        }
        let points = counts
            .into_iter()
            .map(|((b, d, essential), multiplicity)| DiagramPoint {
                birth: from_ordered_bits(b),
                death: from_ordered_bits(d),
                multiplicity,
                essential,
            })
            .collect();
        PersistenceDiagram { kind, points }
    }

    /// Total number of points counting multiplicity.
    pub fn size(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Multiplicity of the point `(birth, death)` (any essential flag).
    pub fn multiplicity_at(&self, birth: f64, death: f64) -> usize {
        self.points
            .iter()
            .filter(|p| p.birth == birth && p.death == death)
            .map(|p| p.multiplicity)
            .sum()
    }
}

// Order-preserving map of finite f64 onto u64 so floats can key a BTreeMap.
fn ordered_bits(x: f64) -> u64 {
    let bits = x.to_bits();
    if bits >> 63 == 1 {
        !bits
    } else {
        bits | (1 << 63)
    }
}

fn from_ordered_bits(k: u64) -> f64 {
    if k >> 63 == 1 {
        f64::from_bits(k & !(1 << 63))
    } else {
        f64::from_bits(!k)
    }
}

/// Diagram of one dimension, or the total diagram over all dimensions.
pub fn diagram_from_pairs(pairs: &[PersistencePair], kind: DiagramKind) -> PersistenceDiagram {
    let keep = |p: &&PersistencePair| match kind {
        DiagramKind::Dim(d) => p.dim == d,
        DiagramKind::Total => p.dim <= MAX_DIM,
    };
    PersistenceDiagram::from_triples(
        kind,
        pairs
            .iter()
            .filter(keep)
            .map(|p| (p.birth, p.death_capped(), p.is_essential())),
    )
}

/// Multiplicity of `(w_i, w_j)` in the dimension-`p` diagram, from the
/// alternating sum of persistent Betti numbers at stages just below and just
/// above each coordinate. Essential classes are treated as dying at 1.0.
///
/// Used to cross-check [`diagram_from_pairs`]; requires `w_i < w_j`.
pub fn multiplicity_oracle(fc: &FilteredComplex, pairs: &[PersistencePair], p: usize, w_i: f64, w_j: f64) -> usize {
    assert!(w_i < w_j, "multiplicity needs w_i < w_j");
    let n = fc.len();
    let weights = fc.weights();
    // Stage sizes: simplices with weight <= x (x = w + 0) or < x (x = w - 0).
    // Stage n + 1 stands for "past the 1.0 cap", where essential classes are dead.
    let above = |w: f64| {
        if w >= TOP_WEIGHT {
            n + 1
        } else {
            weights.partition_point(|&x| x <= w)
        }
    };
    let below = |w: f64| weights.partition_point(|&x| x < w);
    let rank = |a: usize, b: usize| -> i64 {
        pairs
            .iter()
            .filter(|q| {
                let death_stage = q.death_index.unwrap_or(n);
                q.dim == p && q.birth_index < a && death_stage >= b
            })
            .count() as i64
    };
    let mu = rank(above(w_i), below(w_j)) - rank(above(w_i), above(w_j)) + rank(below(w_i), above(w_j))
        - rank(below(w_i), below(w_j));
    debug_assert!(mu >= 0);
    mu.max(0) as usize
}

/// L-infinity distance between two points.
#[inline]
fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

/// L-infinity distance from a point to the diagonal.
#[inline]
fn to_diagonal(a: (f64, f64)) -> f64 {
    (a.1 - a.0) / 2.0
}

/// Off-diagonal points with identical coordinates merged.
fn off_diagonal(d: &PersistenceDiagram) -> Vec<((f64, f64), usize)> {
    let mut merged: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for p in d.points.iter().filter(|p| p.death > p.birth) {
        *merged.entry((ordered_bits(p.birth), ordered_bits(p.death))).or_insert(0) += p.multiplicity;
    }
    merged
        .into_iter()
        .map(|((b, d), m)| ((from_ordered_bits(b), from_ordered_bits(d)), m))
        .collect()
}

/// Exact bottleneck distance.
///
/// The answer is one of the point-to-point or point-to-diagonal distances, so
/// the candidates are sorted and binary-searched with a matching feasibility
/// test. Points with equal coordinates are merged and the feasibility test
/// runs as a capacitated matching (max-flow with augmenting paths) where all
/// diagonal slots of each side are pooled into one node. Points on the
/// diagonal never affect the result.
pub fn bottleneck(x: &PersistenceDiagram, y: &PersistenceDiagram) -> f64 {
    let xs = off_diagonal(x);
    let ys = off_diagonal(y);
    if xs.is_empty() && ys.is_empty() {
        return 0.0;
    }
    if ys.is_empty() || xs.is_empty() {
        let side = if ys.is_empty() { &xs } else { &ys };
        return side.iter().map(|&(p, _)| to_diagonal(p)).fold(0.0, f64::max);
    }

    let mut candidates: Vec<f64> = Vec::with_capacity(xs.len() * ys.len() + xs.len() + ys.len());
    candidates.extend(xs.iter().chain(&ys).map(|&(p, _)| to_diagonal(p)));
    for &(a, _) in &xs {
        for &(b, _) in &ys {
            candidates.push(linf(a, b));
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if matching_feasible(&xs, &ys, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

fn matching_feasible(xs: &[((f64, f64), usize)], ys: &[((f64, f64), usize)], delta: f64) -> bool {
    let nx = xs.len();
    let ny = ys.len();
    let total_x: usize = xs.iter().map(|p| p.1).sum();
    let total_y: usize = ys.iter().map(|p| p.1).sum();
    // Node layout: source, X points, pooled diagonal slots for Y, Y points, pooled diagonal slots for X, sink.
    let source = 0;
    let x0 = 1;
    let diag_left = x0 + nx;
    let y0 = diag_left + 1;
    let diag_right = y0 + ny;
    let sink = diag_right + 1;
    let inf = (total_x + total_y) as i64;

    let mut net = FlowNetwork::new(sink + 1);
    for (i, &(p, m)) in xs.iter().enumerate() {
        net.add_edge(source, x0 + i, m as i64);
        if to_diagonal(p) <= delta {
            net.add_edge(x0 + i, diag_right, inf);
        }
        for (j, &(q, _)) in ys.iter().enumerate() {
            if linf(p, q) <= delta {
                net.add_edge(x0 + i, y0 + j, inf);
            }
        }
    }
    net.add_edge(source, diag_left, total_y as i64);
    for (j, &(q, m)) in ys.iter().enumerate() {
        if to_diagonal(q) <= delta {
            net.add_edge(diag_left, y0 + j, inf);
        }
        net.add_edge(y0 + j, sink, m as i64);
    }
    net.add_edge(diag_left, diag_right, inf);
    net.add_edge(diag_right, sink, total_x as i64);

    net.max_flow(source, sink) == (total_x + total_y) as i64
}

/// Dinic max-flow on a small dense-ish network.
struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        FlowNetwork {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_edge(&mut self, a: usize, b: usize, c: i64) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.head.len();
        let mut flow = 0;
        let mut level = vec![usize::MAX; n];
        let mut it = vec![0usize; n];
        loop {
            level.iter_mut().for_each(|l| *l = usize::MAX);
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.head[v] {
                    let w = self.to[e];
                    if self.cap[e] > 0 && level[w] == usize::MAX {
                        level[w] = level[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if level[t] == usize::MAX {
                return flow;
            }
            it.iter_mut().for_each(|i| *i = 0);
            loop {
                let pushed = self.augment(s, t, i64::MAX, &level, &mut it);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
    }

    fn augment(&mut self, v: usize, t: usize, limit: i64, level: &[usize], it: &mut [usize]) -> i64 {
        if v == t {
            return limit;
        }
        while it[v] < self.head[v].len() {
            let e = self.head[v][it[v]];
            let w = self.to[e];
            if self.cap[e] > 0 && level[w] == level[v] + 1 {
                let pushed = self.augment(w, t, limit.min(self.cap[e]), level, it);
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            it[v] += 1;
        }
        0
    }
}

/// Mean and standard error of a collection of pairwise distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceSummary {
    pub model_a: String,
    pub model_b: String,
    pub mean: f64,
    /// Sample standard deviation over `sqrt(n_pairs)`; 0 for fewer than two pairs.
    pub stderr: f64,
    pub n_pairs: usize,
}

impl DistanceSummary {
    pub fn from_distances(model_a: impl Into<String>, model_b: impl Into<String>, distances: &[f64]) -> Self {
        let n = distances.len();
        let mean = if n == 0 {
            0.0
        } else {
            distances.iter().sum::<f64>() / n as f64
        };
        let stderr = if n < 2 {
            0.0
        } else {
            let var = distances.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        };
        DistanceSummary {
            model_a: model_a.into(),
            model_b: model_b.into(),
            mean,
            stderr,
            n_pairs: n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(points: &[(f64, f64)]) -> PersistenceDiagram {
        PersistenceDiagram::from_triples(DiagramKind::Total, points.iter().map(|&(b, d)| (b, d, false)))
    }

    #[test]
    fn multiplicity_aggregation() {
        let d = diag(&[(0.2, 0.5), (0.2, 0.5), (0.1, 0.3)]);
        assert_eq!(d.points.len(), 2);
        assert_eq!(d.points[0].birth, 0.1);
        assert_eq!(d.multiplicity_at(0.2, 0.5), 2);
        assert_eq!(d.size(), 3);
        assert!(diagram_from_pairs(&[], DiagramKind::Total).is_empty());
    }

    #[test]
    fn ordered_bits_round_trip() {
        for x in [-3.5, -0.0, 0.0, 1e-300, 0.25, 7.0] {
            assert_eq!(from_ordered_bits(ordered_bits(x)).to_bits(), x.to_bits());
        }
        assert!(ordered_bits(-1.0) < ordered_bits(0.5));
        assert!(ordered_bits(0.5) < ordered_bits(0.75));
    }

    #[test]
    fn bottleneck_examples() {
        let x = diag(&[(1.0, 3.0)]);
        let empty = diag(&[]);
        assert_eq!(bottleneck(&x, &empty), 1.0);
        assert_eq!(bottleneck(&empty, &x), 1.0);
        assert_eq!(bottleneck(&x, &x), 0.0);
        assert_eq!(bottleneck(&diag(&[(0.0, 2.0)]), &diag(&[(0.0, 4.0)])), 2.0);
        assert_eq!(bottleneck(&empty, &empty), 0.0);
    }

    #[test]
    fn diagonal_points_are_free() {
        let x = diag(&[(0.2, 0.6), (0.3, 0.3), (0.5, 0.5)]);
        let y = diag(&[(0.2, 0.6)]);
        assert_eq!(bottleneck(&x, &y), 0.0);
    }

    #[test]
    fn multiplicities_force_diagonal_matches() {
        // Two copies of a point against one copy: the spare goes to the diagonal.
        let x = diag(&[(0.0, 1.0), (0.0, 1.0)]);
        let y = diag(&[(0.0, 1.0)]);
        assert_eq!(bottleneck(&x, &y), 0.5);
    }

    #[test]
    fn summary_statistics() {
        let s = DistanceSummary::from_distances("a", "b", &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        let sd = (5.0f64 / 3.0).sqrt();
        assert!((s.stderr - sd / 2.0).abs() < 1e-15);
        assert_eq!(s.n_pairs, 4);
        let one = DistanceSummary::from_distances("a", "a", &[0.7]);
        assert_eq!(one.stderr, 0.0);
    }
}
