//! Graph to barcode in one pass: edge scores, normalized weights, weighted
//! clique complex, filtration, persistence pairs.

use std::fmt;
use std::str::FromStr;

use crate::centrality::{edge_betweenness_all, Convention};
use crate::complex::{build_filtration, enumerate_cliques, FilteredComplex, MAX_DIM};
use crate::curvature::forman_ricci_all;
use crate::diagram::{diagram_from_pairs, DiagramKind, PersistenceDiagram};
use crate::error::StructureError;
use crate::graph::Graph;
use crate::persistence::{barcodes, compute_persistence, Barcode, PersistencePair};
use crate::weighting::{extend_weights, normalize_ebc, normalize_forman, EdgeWeights, DEFAULT_EPSILON};

/// Edge score used to weight the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    #[default]
    Forman,
    Ebc,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Forman => "forman",
            Scheme::Ebc => "ebc",
        })
    }
}

impl FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "forman" => Ok(Scheme::Forman),
            "ebc" => Ok(Scheme::Ebc),
            other => Err(format!("unknown scheme {other:?} (expected forman or ebc)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineOptions {
    pub scheme: Scheme,
    pub epsilon: f64,
    pub max_dim: usize,
    pub convention: Convention,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            scheme: Scheme::Forman,
            epsilon: DEFAULT_EPSILON,
            max_dim: MAX_DIM,
            convention: Convention::OrderedPairs,
        }
    }
}

/// Raw per-edge scores, indexed like [`Graph::edges`].
#[derive(Debug, Clone, PartialEq)]
pub enum EdgeScores {
    Forman(Vec<i64>),
    Ebc(Vec<f64>),
}

impl EdgeScores {
    pub fn compute(g: &Graph, opts: &PipelineOptions) -> Self {
        match opts.scheme {
            Scheme::Forman => EdgeScores::Forman(forman_ricci_all(g)),
            Scheme::Ebc => EdgeScores::Ebc(edge_betweenness_all(g, opts.convention)),
        }
    }

    /// Normalized weights; an edgeless graph yields an empty list.
    pub fn normalize(&self, epsilon: f64) -> Vec<f64> {
        match self {
            EdgeScores::Forman(f) => normalize_forman(f, epsilon),
            EdgeScores::Ebc(b) => normalize_ebc(b, epsilon),
        }
        .unwrap_or_default()
    }
}

/// Every intermediate artifact of one pipeline run.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub scores: EdgeScores,
    pub edge_weights: EdgeWeights,
    pub complex: FilteredComplex,
    pub pairs: Vec<PersistencePair>,
}

impl Analysis {
    pub fn barcode(&self) -> Barcode {
        barcodes(&self.pairs)
    }

    pub fn diagram(&self, kind: DiagramKind) -> PersistenceDiagram {
        diagram_from_pairs(&self.pairs, kind)
    }
}

/// Weighted, filtered clique complex of `g` from precomputed edge weights.
pub fn weighted_complex(g: &Graph, edge_weights: &EdgeWeights, max_dim: usize) -> Result<FilteredComplex, StructureError> {
    let simplices = enumerate_cliques(g, max_dim);
    let weights = extend_weights(&simplices, edge_weights)?;
    build_filtration(simplices, weights)
}

/// Runs the whole pipeline on `g`.
pub fn analyze(g: &Graph, opts: &PipelineOptions) -> Result<Analysis, StructureError> {
    let scores = EdgeScores::compute(g, opts);
    let edge_weights = EdgeWeights::for_graph(g, scores.normalize(opts.epsilon));
    let complex = weighted_complex(g, &edge_weights, opts.max_dim)?;
    let pairs = compute_persistence(&complex)?;
    Ok(Analysis {
        scores,
        edge_weights,
        complex,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_forman() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let a = analyze(&g, &PipelineOptions::default()).unwrap();
        assert_eq!(a.scores, EdgeScores::Forman(vec![3, 3, 3]));
        let bc = a.barcode();
        assert_eq!(bc.essential_count(0), 1);
        assert_eq!(bc.essential_count(1), 0);
    }

    #[test]
    fn isolated_vertex_is_born_last() {
        // A 4-cycle with a chord, a pendant, and an isolated vertex 6.
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4), (4, 5)]);
        for scheme in [Scheme::Forman, Scheme::Ebc] {
            let opts = PipelineOptions { scheme, ..Default::default() };
            let a = analyze(&g, &opts).unwrap();
            let top = a.complex.max_weight().unwrap();
            let pos = a.complex.position_index()[&crate::complex::Simplex::vertex(6)];
            assert_eq!(a.complex.weights()[pos], top);
            let ess: Vec<_> = a.barcode().dim(0).iter().filter(|b| b.essential).copied().collect();
            assert_eq!(ess.len(), 2);
            assert_eq!(ess[1].birth, top);
            assert_eq!(ess[1].death, 1.0);
        }
    }

    #[test]
    fn edgeless_graph_single_stage() {
        let g = Graph::from_edges(3, []);
        let a = analyze(&g, &PipelineOptions::default()).unwrap();
        assert_eq!(a.complex.levels(), vec![1.0]);
        assert_eq!(a.barcode().essential_count(0), 3);
    }

    #[test]
    fn scheme_parsing() {
        assert_eq!("ebc".parse::<Scheme>().unwrap(), Scheme::Ebc);
        assert!("x".parse::<Scheme>().is_err());
        assert_eq!(Scheme::Forman.to_string(), "forman");
    }
}
