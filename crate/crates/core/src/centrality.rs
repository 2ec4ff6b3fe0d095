//! Edge betweenness centrality.
//!
//! `EBC(e)` sums, over ordered pairs of distinct vertices `(s, t)`, the fraction
//! of shortest `s`-`t` paths that use `e`. Each unordered pair therefore
//! contributes twice; [`Convention::UnorderedPairs`] halves the result to match
//! libraries that count unordered pairs. Disconnected pairs contribute nothing.

use std::collections::VecDeque;

use crate::error::StructureError;
use crate::graph::Graph;

/// Pair-counting convention for betweenness values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// Every ordered pair `(s, t)` with `s != t`.
    #[default]
    OrderedPairs,
    /// Every unordered pair; half of the ordered value.
    UnorderedPairs,
}

/// Largest graph accepted by [`ebc_brute_force`].
pub const BRUTE_FORCE_MAX_VERTICES: usize = 64;

/// Betweenness of every edge (indexed like [`Graph::edges`]) via one
/// breadth-first search per source with dependency accumulation.
pub fn edge_betweenness_all(g: &Graph, convention: Convention) -> Vec<f64> {
    let n = g.n();
    let mut ebc = vec![0.0f64; g.edge_count()];

    let mut dist = vec![u32::MAX; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);

    for s in 0..n {
        order.clear();
        for v in 0..n {
            dist[v] = u32::MAX;
            sigma[v] = 0.0;
            delta[v] = 0.0;
        }
        dist[s] = 0;
        sigma[s] = 1.0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let dv = dist[v];
            for &w in g.neighbors(v) {
                if dist[w] == u32::MAX {
                    dist[w] = dv + 1;
                    queue.push_back(w);
                }
                if dist[w] == dv + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        // Predecessors of w are the neighbours one step closer to s.
        for &w in order.iter().rev() {
            let dw = dist[w];
            if dw == 0 {
                continue;
            }
            let coeff = (1.0 + delta[w]) / sigma[w];
            for (&v, &ei) in g.neighbors(w).iter().zip(g.incident_edges(w)) {
                if dist[v] + 1 == dw {
                    let c = sigma[v] * coeff;
                    ebc[ei] += c;
                    delta[v] += c;
                }
            }
        }
    }

    if convention == Convention::UnorderedPairs {
        for x in &mut ebc {
            *x *= 0.5;
        }
    }
    ebc
}

/// Reference betweenness by explicit enumeration of every shortest path of
/// every ordered pair. Exponential in the worst case; limited to
/// [`BRUTE_FORCE_MAX_VERTICES`] vertices.
pub fn ebc_brute_force(g: &Graph) -> Result<Vec<f64>, StructureError> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(StructureError::TooLargeForOracle {
            n,
            max: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let mut ebc = vec![0.0f64; g.edge_count()];
    for s in 0..n {
        let dist = bfs_distances(g, s);
        for t in 0..n {
            if t == s || dist[t] == usize::MAX {
                continue;
            }
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut current = Vec::new();
            walk_back(g, &dist, t, &mut current, &mut paths);
            let mut uses = vec![0usize; g.edge_count()];
            for path in &paths {
                for &ei in path {
                    uses[ei] += 1;
                }
            }
            let total = paths.len() as f64;
            for (ei, &k) in uses.iter().enumerate() {
                if k > 0 {
                    ebc[ei] += k as f64 / total;
                }
            }
        }
    }
    Ok(ebc)
}

fn bfs_distances(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

// Collects every shortest path ending at `v` (as edge-index lists) by stepping to
// neighbours one unit closer to the source.
fn walk_back(g: &Graph, dist: &[usize], v: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if dist[v] == 0 {
        out.push(current.clone());
        return;
    }
    for (&u, &ei) in g.neighbors(v).iter().zip(g.incident_edges(v)) {
        if dist[u] != usize::MAX && dist[u] + 1 == dist[v] {
            current.push(ei);
            walk_back(g, dist, u, current, out);
            current.pop();
        }
    }
}
