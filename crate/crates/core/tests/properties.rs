use std::collections::VecDeque;

use proptest::prelude::*;

use netph::centrality::{edge_betweenness_all, Convention};
use netph::complex::validate_complex;
use netph::diagram::{bottleneck, DiagramKind, PersistenceDiagram};
use netph::generators::{gen_ba, gen_er};
use netph::oracles::{betti_by_rank, bottleneck_exhaustive, persistent_rank};
use netph::persistence::{betti_numbers, boundary_matrix, persistent_betti};
use netph::pipeline::{analyze, Analysis, PipelineOptions, Scheme};
use netph::{multiplicity_oracle, Graph};

fn run(g: &Graph, scheme: Scheme) -> Analysis {
    analyze(g, &PipelineOptions { scheme, ..Default::default() }).unwrap()
}

fn scheme() -> impl Strategy<Value = Scheme> {
    prop_oneof![Just(Scheme::Forman), Just(Scheme::Ebc)]
}

fn small_er() -> impl Strategy<Value = Graph> {
    (1usize..=11, 0.0f64..0.8, any::<u64>()).prop_map(|(n, p, seed)| gen_er(n, p, seed))
}

fn diagram() -> impl Strategy<Value = PersistenceDiagram> {
    prop::collection::vec((0u8..20, 0u8..20), 0..5).prop_map(|pts| {
        PersistenceDiagram::from_triples(
            DiagramKind::Total,
            pts.into_iter().map(|(a, b)| {
                let (lo, hi) = (a.min(b) as f64 / 20.0, a.max(b) as f64 / 20.0);
                (lo, hi, false)
            }),
        )
    })
}

fn bfs_distances(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        let d = dist[v].unwrap();
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_of_boundary_vanishes(g in small_er(), s in scheme()) {
        let a = run(&g, s);
        let m = boundary_matrix(&a.complex).unwrap();
        for j in 0..m.len() {
            prop_assert!(m.boundary_of_boundary(j).is_empty());
        }
    }

    #[test]
    fn complexes_are_valid_filtrations(g in small_er(), s in scheme()) {
        let a = run(&g, s);
        let report = validate_complex(&a.complex);
        prop_assert!(report.is_ok(), "{}", report);
    }

    #[test]
    fn euler_characteristic(g in small_er(), s in scheme()) {
        let a = run(&g, s);
        let counts = a.complex.count_by_dim();
        let betti = betti_numbers(&a.pairs);
        let chi = |v: [usize; 4]| v.iter().enumerate().map(|(p, &c)| if p % 2 == 0 { c as i64 } else { -(c as i64) }).sum::<i64>();
        prop_assert_eq!(chi(counts), chi(betti));
    }

    #[test]
    fn pairing_count(g in small_er(), s in scheme()) {
        let a = run(&g, s);
        let finite = a.pairs.iter().filter(|p| !p.is_essential()).count();
        let essential = a.pairs.len() - finite;
        prop_assert_eq!(2 * finite + essential, a.complex.len());
        let dims: Vec<usize> = a.complex.simplices().iter().map(|s| s.dim()).collect();
        for p in &a.pairs {
            prop_assert_eq!(dims[p.birth_index], p.dim);
            if let Some(d) = p.death_index {
                prop_assert_eq!(dims[d], p.dim + 1);
                prop_assert!(p.birth_index < d);
            }
        }
    }

    #[test]
    fn betti_matches_rank_oracle(g in small_er(), s in scheme()) {
        let a = run(&g, s);
        prop_assert_eq!(betti_numbers(&a.pairs), betti_by_rank(&a.complex));
    }

    #[test]
    fn components_are_essential_h0(g in small_er()) {
        let a = run(&g, Scheme::Forman);
        prop_assert_eq!(g.connected_components().0, betti_numbers(&a.pairs)[0]);
    }

    #[test]
    fn persistent_betti_matches_linear_algebra(g in small_er(), s in scheme(), x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let a = run(&g, s);
        let n = a.complex.len();
        let i = (x * (n + 1) as f64) as usize;
        let end = i + ((y * (n - i + 1) as f64) as usize).min(n - i);
        for p in 0..=3 {
            prop_assert_eq!(
                persistent_betti(&a.pairs, n, i, end - i, p).unwrap(),
                persistent_rank(&a.complex, i, end, p),
                "p = {}, stages {}..{}", p, i, end
            );
        }
    }

    #[test]
    fn diagram_multiplicities_match_rank_formula(g in small_er(), s in scheme()) {
        let a = run(&g, s);
        let fc = &a.complex;
        let n = fc.len();
        let w = fc.weights();
        let upto = |x: f64| if x >= 1.0 { n + 1 } else { w.partition_point(|&v| v <= x) };
        let before = |x: f64| w.partition_point(|&v| v < x);
        for p in 0..=3 {
            let rk = |i: usize, j: usize| -> i64 {
                if j > n { 0 } else { persistent_rank(fc, i.min(j), j, p) as i64 }
            };
            let d = a.diagram(DiagramKind::Dim(p));
            for pt in d.points.iter().filter(|q| q.death > q.birth) {
                let (bi, dj) = (pt.birth, pt.death);
                let mu = rk(upto(bi), before(dj)) - rk(upto(bi), upto(dj)) + rk(before(bi), upto(dj))
                    - rk(before(bi), before(dj));
                prop_assert_eq!(mu, pt.multiplicity as i64);
                prop_assert_eq!(multiplicity_oracle(fc, &a.pairs, p, bi, dj), pt.multiplicity);
            }
        }
    }

    #[test]
    fn ebc_sum_rule(g in (1usize..=30, 0.0f64..0.4, any::<u64>()).prop_map(|(n, p, s)| gen_er(n, p, s))) {
        let total: f64 = edge_betweenness_all(&g, Convention::OrderedPairs).iter().sum();
        let expected: usize = (0..g.n())
            .map(|s| bfs_distances(&g, s).into_iter().flatten().sum::<usize>())
            .sum();
        prop_assert!((total - expected as f64).abs() < 1e-9 * (1.0 + expected as f64));
        let half: f64 = edge_betweenness_all(&g, Convention::UnorderedPairs).iter().sum();
        prop_assert!((2.0 * half - total).abs() < 1e-9 * (1.0 + total));
    }

    #[test]
    fn bottleneck_is_a_pseudometric(x in diagram(), y in diagram(), z in diagram()) {
        let dxy = bottleneck(&x, &y);
        prop_assert_eq!(bottleneck(&x, &x), 0.0);
        prop_assert_eq!(dxy, bottleneck(&y, &x));
        prop_assert!(bottleneck(&x, &z) <= dxy + bottleneck(&y, &z) + 1e-12);
        prop_assert!((dxy - bottleneck_exhaustive(&x, &y)).abs() <= 1e-12);
    }

    #[test]
    fn bottleneck_stability(x in diagram(), shifts in prop::collection::vec((-3i8..=3, -3i8..=3), 5)) {
        // Moving each point by at most delta in L-infinity moves the diagram by at most delta.
        let delta = 3.0 / 100.0;
        let moved = PersistenceDiagram::from_triples(
            DiagramKind::Total,
            x.points.iter().flat_map(|p| std::iter::repeat_n((p.birth, p.death), p.multiplicity))
                .zip(shifts.iter().cycle())
                .map(|((b, d), &(sb, sd))| {
                    let (b, d) = (b + sb as f64 / 100.0, d + sd as f64 / 100.0);
                    (b.min(d), d.max(b), false)
                }),
        );
        prop_assert!(bottleneck(&x, &moved) <= delta + 1e-12);
    }
}

#[test]
fn ba_sample_is_connected_with_expected_edge_count() {
    for seed in 0..3 {
        let g = gen_ba(1000, 2, seed).unwrap();
        assert_eq!(g.edge_count(), 1 + 2 * 998);
        assert_eq!(g.connected_components().0, 1);
    }
}

#[test]
fn er_sample_components_match_h0() {
    let g = gen_er(1000, 0.004, 7);
    let a = run(&g, Scheme::Forman);
    assert_eq!(a.barcode().essential_count(0), g.connected_components().0);
}
