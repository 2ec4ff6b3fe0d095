//! Persistent homology of unweighted, undirected networks.
//!
//! An unweighted graph is turned into a filtered clique complex by scoring
//! each edge (Forman-Ricci curvature or edge betweenness), normalizing the
//! scores into `(0, 1)`, and extending them to vertices (minimum over incident
//! edges) and to triangles and tetrahedra (maximum over their edges). The
//! persistence of that filtration is computed over GF(2), summarized as
//! barcodes and diagrams, and compared across networks with the bottleneck
//! distance.
//!
//! ```
//! use netph::{analyze, Graph, PipelineOptions};
//!
//! let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
//! let analysis = analyze(&g, &PipelineOptions::default()).unwrap();
//! let barcode = analysis.barcode();
//! assert_eq!(barcode.essential_count(0), 1);
//! assert_eq!(barcode.essential_count(1), 1);
//! ```

pub mod centrality;
pub mod complex;
pub mod curvature;
pub mod diagram;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracles;
pub mod persistence;
pub mod pipeline;
pub mod svg;
pub mod weighting;

pub use centrality::{ebc_brute_force, edge_betweenness_all, Convention};
pub use complex::{build_filtration, enumerate_cliques, validate_complex, FilteredComplex, Simplex, MAX_DIM};
pub use curvature::{forman_ricci, forman_ricci_all, triangles_on_edge};
pub use diagram::{bottleneck, diagram_from_pairs, multiplicity_oracle, DiagramKind, DistanceSummary, PersistenceDiagram};
pub use error::{Error, GeneratorError, ParseError, Result, StructureError};
pub use experiment::{compare_models, run_model_comparison, ComparisonConfig, ComparisonMatrix};
pub use generators::{Family, ModelSpec};
pub use graph::{load_edge_list, write_edge_list, Edge, Graph, VertexId};
pub use persistence::{
    barcodes, boundary_matrix, compute_persistence, persistent_betti, reduce, Barcode, BoundaryMatrix, Interval,
    PersistencePair,
};
pub use pipeline::{analyze, Analysis, PipelineOptions, Scheme};
pub use weighting::{extend_weights, normalize_ebc, normalize_forman, EdgeWeights, DEFAULT_EPSILON};
