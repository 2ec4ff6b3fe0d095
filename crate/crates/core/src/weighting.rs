//! Edge-score normalization and extension of edge weights to all simplices.
//!
//! Forman curvature maps increasingly onto `(0, 1)`: the most negative curvature
//! gets the smallest weight and enters the filtration first. Betweenness maps
//! decreasingly: the most central edge enters first. Both use a margin
//! `epsilon` so that no edge sits at 0 or 1 and a constant score maps to 0.5.

use crate::complex::Simplex;
use crate::error::{NoEdges, StructureError};
use crate::graph::{Edge, Graph};

/// Margin used by both normalizations.
pub const DEFAULT_EPSILON: f64 = 1.0;

/// Weight assigned to every vertex of an edgeless complex, and the value at which
/// essential classes are capped.
pub const TOP_WEIGHT: f64 = 1.0;

/// Normalized weight per edge, indexed like [`Graph::edges`].
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeights {
    edges: Vec<Edge>,
    weights: Vec<f64>,
}

impl EdgeWeights {
    /// `edges` must be sorted and distinct, as returned by [`Graph::edges`].
    pub fn new(edges: Vec<Edge>, weights: Vec<f64>) -> Self {
        assert_eq!(edges.len(), weights.len());
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        EdgeWeights { edges, weights }
    }

    pub fn for_graph(g: &Graph, weights: Vec<f64>) -> Self {
        EdgeWeights::new(g.edges().to_vec(), weights)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn get(&self, a: usize, b: usize) -> Option<f64> {
        let e = Edge::new(a, b)?;
        self.edges.binary_search(&e).ok().map(|i| self.weights[i])
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

fn extrema(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    values.fold(None, |acc, x| match acc {
        None => Some((x, x)),
        Some((lo, hi)) => Some((lo.min(x), hi.max(x))),
    })
}

/// `w = (F - (F_min - eps)) / ((F_max + eps) - (F_min - eps))`.
pub fn normalize_forman(curvatures: &[i64], epsilon: f64) -> Result<Vec<f64>, NoEdges> {
    let (lo, hi) = extrema(curvatures.iter().map(|&f| f as f64)).ok_or(NoEdges)?;
    let floor = lo - epsilon;
    let span = (hi + epsilon) - floor;
    Ok(curvatures.iter().map(|&f| (f as f64 - floor) / span).collect())
}

/// `w = ((EBC_max + eps) - EBC) / ((EBC_max + eps) - (EBC_min - eps))`.
pub fn normalize_ebc(centralities: &[f64], epsilon: f64) -> Result<Vec<f64>, NoEdges> {
    let (lo, hi) = extrema(centralities.iter().copied()).ok_or(NoEdges)?;
    let ceil = hi + epsilon;
    let span = ceil - (lo - epsilon);
    Ok(centralities.iter().map(|&b| (ceil - b) / span).collect())
}

/// Weight of every simplex in `simplices`.
///
/// Vertices take the minimum weight of their incident edges; simplices of
/// dimension 2 and 3 take the maximum over their edges. Vertices without any
/// incident edge take the largest weight present, or [`TOP_WEIGHT`] when there
/// are no edges at all.
pub fn extend_weights(simplices: &[Simplex], edge_weights: &EdgeWeights) -> Result<Vec<f64>, StructureError> {
    let top = edge_weights
        .weights()
        .iter()
        .copied()
        .fold(None, |m: Option<f64>, w| Some(m.map_or(w, |m| m.max(w))))
        .unwrap_or(TOP_WEIGHT);

    let max_vertex = simplices
        .iter()
        .flat_map(|s| s.raw().iter().map(|&v| v as usize))
        .max()
        .map_or(0, |m| m + 1);
    let mut vertex_min: Vec<Option<f64>> = vec![None; max_vertex];
    for s in simplices.iter().filter(|s| s.dim() == 1) {
        let r = s.raw();
        let (a, b) = (r[0] as usize, r[1] as usize);
        let w = edge_weights
            .get(a, b)
            .ok_or(StructureError::MissingEdgeWeight(a, b))?;
        for v in [a, b] {
            vertex_min[v] = Some(vertex_min[v].map_or(w, |m: f64| m.min(w)));
        }
    }

    simplices
        .iter()
        .map(|s| match s.dim() {
            0 => Ok(vertex_min[s.raw()[0] as usize].unwrap_or(top)),
            _ => s.edges().try_fold(f64::NEG_INFINITY, |m, (a, b)| {
                edge_weights
                    .get(a, b)
                    .map(|w| m.max(w))
                    .ok_or(StructureError::MissingEdgeWeight(a, b))
            }),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::enumerate_cliques;
    use approx::assert_relative_eq;

    #[test]
    fn forman_examples() {
        assert_eq!(normalize_forman(&[1, 1], 1.0).unwrap(), vec![0.5, 0.5]);
        let w = normalize_forman(&[1, 0, 1], 1.0).unwrap();
        assert_relative_eq!(w[0], 2.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(w[1], 1.0 / 3.0, epsilon = 1e-15);
        assert_eq!(normalize_forman(&[3, 3, 3], 1.0).unwrap(), vec![0.5; 3]);
        assert_eq!(normalize_forman(&[], 1.0), Err(NoEdges));
    }

    #[test]
    fn ebc_examples() {
        assert_eq!(normalize_ebc(&[2.0; 3], 1.0).unwrap(), vec![0.5; 3]);
        assert_eq!(normalize_ebc(&[4.0, 4.0], 1.0).unwrap(), vec![0.5, 0.5]);
        assert_eq!(normalize_ebc(&[6.0, 8.0, 6.0], 1.0).unwrap(), vec![0.75, 0.25, 0.75]);
        assert_eq!(normalize_ebc(&[], 1.0), Err(NoEdges));
    }

    #[test]
    fn extremal_edge_weight_is_margin_over_span() {
        let f = [-7i64, -2, 0, 5];
        let w = normalize_forman(&f, 1.0).unwrap();
        assert_relative_eq!(w[0], 1.0 / (12.0 + 2.0), epsilon = 1e-15);
        assert_relative_eq!(w[3], 13.0 / 14.0, epsilon = 1e-15);
        assert!(w.iter().all(|&x| x > 0.0 && x < 1.0));
        let b = normalize_ebc(&[2.0, 10.0, 4.5], 0.5).unwrap();
        assert_relative_eq!(b[1], 0.5 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn shifting_curvature_keeps_edge_order() {
        let f = [3i64, -4, 0, 2, -4, 9];
        let shifted: Vec<i64> = f.iter().map(|x| x + 17).collect();
        let a = normalize_forman(&f, 1.0).unwrap();
        let b = normalize_forman(&shifted, 1.0).unwrap();
        let rank = |w: &[f64]| {
            let mut idx: Vec<usize> = (0..w.len()).collect();
            idx.sort_by(|&i, &j| w[i].total_cmp(&w[j]).then(i.cmp(&j)));
            idx
        };
        assert_eq!(rank(&a), rank(&b));
    }

    #[test]
    fn triangle_extension() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let list = enumerate_cliques(&g, 3);
        let ew = EdgeWeights::for_graph(&g, vec![0.5; 3]);
        assert_eq!(extend_weights(&list, &ew).unwrap(), vec![0.5; 7]);
    }

    #[test]
    fn p4_min_rule_and_isolated_vertex() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3)]);
        let list = enumerate_cliques(&g, 3);
        let ew = EdgeWeights::for_graph(&g, vec![2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0]);
        let w = extend_weights(&list, &ew).unwrap();
        assert_eq!(&w[..5], &[2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0]);
    }

    #[test]
    fn higher_simplices_take_max_edge() {
        let g = Graph::from_edges(4, (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))));
        let list = enumerate_cliques(&g, 3);
        let ew = EdgeWeights::for_graph(&g, vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6]);
        let w = extend_weights(&list, &ew).unwrap();
        // Triangles [0,1,2], [0,1,3], [0,2,3], [1,2,3] then the tetrahedron.
        assert_eq!(&w[10..], &[0.4, 0.5, 0.6, 0.6, 0.6]);
        assert_eq!(&w[..4], &[0.1, 0.1, 0.2, 0.3]);
    }

    #[test]
    fn edgeless_vertices_get_top_weight() {
        let g = Graph::from_edges(3, []);
        let list = enumerate_cliques(&g, 3);
        let ew = EdgeWeights::for_graph(&g, vec![]);
        assert_eq!(extend_weights(&list, &ew).unwrap(), vec![1.0; 3]);
    }

    #[test]
    fn missing_edge_weight() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let list = enumerate_cliques(&g, 3);
        let ew = EdgeWeights::new(vec![Edge::new(0, 1).unwrap()], vec![0.5]);
        assert_eq!(
            extend_weights(&list, &ew),
            Err(StructureError::MissingEdgeWeight(1, 2))
        );
    }
}
