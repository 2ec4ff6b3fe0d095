use std::io::Cursor;

use netph::diagram::{diagram_from_pairs, DiagramKind};
use netph::generators::{Family, ModelSpec};
use netph::graph::{load_edge_list, write_edge_list};
use netph::io::{
    diagrams_json, parse_diagrams_json, read_barcode_csv, read_filtration_csv, read_weights_csv, write_barcode_csv,
    write_filtration_csv, write_weights_csv,
};
use netph::persistence::compute_persistence;
use netph::pipeline::{analyze, PipelineOptions, Scheme};

fn sample(seed: u64) -> netph::Graph {
    ModelSpec::new(Family::Ws { k: 4, p: 0.3 }, 40, seed).generate().unwrap()
}

#[test]
fn edge_list_round_trip_is_identity() {
    let g = sample(1);
    let mut buf = Vec::new();
    write_edge_list(&g, &mut buf).unwrap();
    let back = load_edge_list(Cursor::new(&buf), None).unwrap();
    assert_eq!(back.edges(), g.edges());
    let mut again = Vec::new();
    write_edge_list(&back, &mut again).unwrap();
    assert_eq!(buf, again);
}

#[test]
fn filtration_round_trip_reproduces_persistence() {
    for seed in 0..5 {
        let a = analyze(&sample(seed), &PipelineOptions { scheme: Scheme::Ebc, ..Default::default() }).unwrap();
        let mut buf = Vec::new();
        write_filtration_csv(&a.complex, &mut buf).unwrap();
        let fc = read_filtration_csv(Cursor::new(&buf)).unwrap();
        assert_eq!(fc.simplices(), a.complex.simplices());
        let pairs = compute_persistence(&fc).unwrap();
        let idx = |ps: &[netph::PersistencePair]| ps.iter().map(|p| (p.dim, p.birth_index, p.death_index)).collect::<Vec<_>>();
        assert_eq!(idx(&pairs), idx(&a.pairs));
    }
}

#[test]
fn weights_round_trip() {
    let a = analyze(&sample(3), &PipelineOptions::default()).unwrap();
    let mut buf = Vec::new();
    write_weights_csv(a.complex.simplices(), a.complex.weights(), &mut buf).unwrap();
    let (s, w) = read_weights_csv(Cursor::new(&buf)).unwrap();
    assert_eq!(s, a.complex.simplices());
    for (x, y) in w.iter().zip(a.complex.weights()) {
        assert!((x - y).abs() <= 1e-12 * y.abs().max(1.0));
    }
}

#[test]
fn barcode_and_diagram_round_trip() {
    let a = analyze(&sample(4), &PipelineOptions::default()).unwrap();
    let mut buf = Vec::new();
    write_barcode_csv(&a.barcode(), &mut buf).unwrap();
    let bars = read_barcode_csv(Cursor::new(&buf)).unwrap();
    assert_eq!(bars.len(), a.pairs.len());
    assert_eq!(bars.iter().filter(|b| b.essential).count(), a.pairs.iter().filter(|p| p.is_essential()).count());

    let kinds = [DiagramKind::Dim(0), DiagramKind::Dim(1), DiagramKind::Total];
    let ds: Vec<_> = kinds.iter().map(|&k| diagram_from_pairs(&a.pairs, k)).collect();
    let text = diagrams_json(&ds).to_string();
    let back = parse_diagrams_json(&text).unwrap();
    for d in &ds {
        let r = &back[&d.kind];
        assert_eq!(r.size(), d.size());
        assert!(netph::bottleneck(r, d) <= 1e-11);
    }
}

#[test]
fn malformed_artifacts_report_line_numbers() {
    let err = read_filtration_csv(Cursor::new("position,dim,vertices,weight\n0,0,0,0.5\n1,1,0 x,0.5\n")).unwrap_err();
    assert!(err.to_string().starts_with("line 3"), "{err}");
    assert!(parse_diagrams_json("{\"0\": [[0.5, 0.2, 1, false]]}").is_err());
}
