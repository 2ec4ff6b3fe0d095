//! Forman-Ricci curvature of edges in an unweighted graph.
//!
//! With unit weights on vertices, edges and triangles, the curvature of an edge
//! `e = (v1, v2)` counts the triangles containing `e`, adds the two endpoint
//! terms, and subtracts one for every other edge at `v1` or `v2` that does not
//! share a triangle with `e`. Every term is an integer, so curvature is stored
//! exactly as `i64`.

use crate::error::StructureError;
use crate::graph::{Graph, VertexId};

/// Curvature of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeCurvature {
    pub u: VertexId,
    pub v: VertexId,
    pub curvature: i64,
}

/// Size of the intersection of two ascending slices.
pub(crate) fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Number of triangles containing the edge `(a, b)`.
pub fn triangles_on_edge(g: &Graph, a: VertexId, b: VertexId) -> Result<usize, StructureError> {
    g.edge_index(a, b)?;
    Ok(sorted_intersection_len(g.neighbors(a), g.neighbors(b)))
}

/// Curvature of `(a, b)` evaluated term by term at unit weights.
///
/// This walks the incident edges explicitly; [`forman_ricci_all`] uses the
/// equivalent closed form `4 - deg(a) - deg(b) + 3 * triangles`.
pub fn forman_ricci(g: &Graph, a: VertexId, b: VertexId) -> Result<i64, StructureError> {
    let triangles = triangles_on_edge(g, a, b)? as i64;
    // w_e * (w_v1 / w_e + w_v2 / w_e)
    let vertex_term = 2;
    let mut parallel = 0i64;
    for (end, other) in [(a, b), (b, a)] {
        for &w in g.neighbors(end) {
            if w == other {
                continue;
            }
            // (end, w) bounds a triangle with e exactly when w is adjacent to `other`.
            if !g.has_edge(w, other) {
                parallel += 1;
            }
        }
    }
    Ok(triangles + vertex_term - parallel)
}

/// Closed form of the unit-weight curvature.
pub fn forman_closed_form(deg_a: usize, deg_b: usize, triangles: usize) -> i64 {
    4 - deg_a as i64 - deg_b as i64 + 3 * triangles as i64
}

/// Curvature of every edge, indexed like [`Graph::edges`].
pub fn forman_ricci_all(g: &Graph) -> Vec<i64> {
    g.edges()
        .iter()
        .map(|e| {
            let (na, nb) = (g.neighbors(e.u), g.neighbors(e.v));
            forman_closed_form(na.len(), nb.len(), sorted_intersection_len(na, nb))
        })
        .collect()
}

/// Same as [`forman_ricci_all`], paired with the edge endpoints.
pub fn edge_curvatures(g: &Graph) -> Vec<EdgeCurvature> {
    g.edges()
        .iter()
        .zip(forman_ricci_all(g))
        .map(|(e, curvature)| EdgeCurvature {
            u: e.u,
            v: e.v,
            curvature,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn complete(n: usize) -> Graph {
        let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::from_edges(n, pairs)
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(triangles_on_edge(&complete(3), 0, 1).unwrap(), 1);
        assert_eq!(triangles_on_edge(&complete(4), 2, 3).unwrap(), 2);
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(triangles_on_edge(&c4, 0, 1).unwrap(), 0);
        assert_eq!(triangles_on_edge(&c4, 0, 2), Err(StructureError::MissingEdge(0, 2)));
    }

    #[test]
    fn isolated_edge_has_curvature_two() {
        let g = Graph::from_edges(2, [(0, 1)]);
        assert_eq!(forman_ricci(&g, 0, 1).unwrap(), 2);
        assert_eq!(forman_ricci_all(&g), vec![2]);
    }

    #[test]
    fn triangle_edges() {
        let g = complete(3);
        for e in g.edges() {
            assert_eq!(forman_ricci(&g, e.u, e.v).unwrap(), 3);
        }
    }

    #[test]
    fn path_p4() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(forman_ricci(&g, 0, 1).unwrap(), 1);
        assert_eq!(forman_ricci(&g, 1, 2).unwrap(), 0);
        assert_eq!(forman_ricci(&g, 2, 3).unwrap(), 1);
        assert_eq!(forman_ricci_all(&g), vec![1, 0, 1]);
    }

    #[test]
    fn k4_and_star() {
        assert_eq!(forman_ricci_all(&complete(4)), vec![4; 6]);
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        assert_eq!(forman_ricci_all(&star), vec![0; 3]);
        assert!(forman_ricci_all(&Graph::from_edges(5, [])).is_empty());
    }

    #[test]
    fn missing_edge_is_error() {
        let g = Graph::from_edges(3, [(0, 1)]);
        assert_eq!(forman_ricci(&g, 1, 2), Err(StructureError::MissingEdge(1, 2)));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..30).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..(n * 3))
                .prop_map(move |pairs| Graph::from_edges(n, pairs))
        })
    }

    proptest! {
        #[test]
        fn literal_matches_closed_form(g in arb_graph()) {
            let fast = forman_ricci_all(&g);
            for (e, f) in g.edges().iter().zip(fast) {
                prop_assert_eq!(forman_ricci(&g, e.u, e.v).unwrap(), f);
                prop_assert_eq!(forman_ricci(&g, e.v, e.u).unwrap(), f);
            }
        }

        #[test]
        fn pendant_vertex_lowers_curvature_by_one(g in arb_graph(), pick in any::<prop::sample::Index>()) {
            prop_assume!(g.edge_count() > 0);
            let e = g.edges()[pick.index(g.edge_count())];
            let before = forman_ricci(&g, e.u, e.v).unwrap();
            let n = g.n();
            let mut pairs: Vec<_> = g.edges().iter().map(|e| (e.u, e.v)).collect();
            pairs.push((e.u, n));
            let h = Graph::from_edges(n + 1, pairs);
            prop_assert_eq!(forman_ricci(&h, e.u, e.v).unwrap(), before - 1);
        }
    }
}
