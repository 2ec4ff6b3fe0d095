//! Fixed inputs shared by the benchmarks.

use netph::generators::{gen_ba, gen_er, gen_hyperbolic};
use netph::pipeline::{analyze, PipelineOptions};
use netph::{DiagramKind, Graph, PersistenceDiagram};

pub fn er(n: usize) -> Graph {
    gen_er(n, 4.0 / (n as f64 - 1.0), 17)
}

pub fn ba(n: usize) -> Graph {
    gen_ba(n, 2, 17).expect("valid BA parameters")
}

pub fn hyperbolic(n: usize) -> Graph {
    gen_hyperbolic(n, 4.0, 2.0, 17).expect("calibration succeeds")
}

/// Total diagram of `g` under the default pipeline.
pub fn total_diagram(g: &Graph) -> PersistenceDiagram {
    analyze(g, &PipelineOptions::default())
        .expect("generated graphs are valid")
        .diagram(DiagramKind::Total)
}
