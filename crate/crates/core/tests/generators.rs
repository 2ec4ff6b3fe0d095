use netph::generators::{gen_ba, gen_er, gen_hyperbolic, gen_spherical, gen_ws};
use netph::Graph;

fn mean_degree(g: &Graph) -> f64 {
    2.0 * g.edge_count() as f64 / g.n() as f64
}

/// Mean over 100 seeds and its standard error.
fn sample(f: impl Fn(u64) -> Graph) -> (f64, f64) {
    let xs: Vec<f64> = (0..100).map(|s| mean_degree(&f(s))).collect();
    let m = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    (m, (var / xs.len() as f64).sqrt())
}

#[test]
fn er_mean_degree_within_three_standard_errors() {
    let (m, se) = sample(|s| gen_er(1000, 0.004, s));
    let target = 999.0 * 0.004;
    assert!((m - target).abs() <= 3.0 * se, "mean {m}, se {se}");
}

#[test]
fn spherical_mean_degree_within_three_standard_errors() {
    let (m, se) = sample(|s| gen_spherical(1000, 4.0, s).unwrap());
    assert!((m - 4.0).abs() <= 3.0 * se, "mean {m}, se {se}");
}

#[test]
fn hyperbolic_mean_degree_within_three_standard_errors() {
    let (m, se) = sample(|s| gen_hyperbolic(1000, 4.0, 2.0, s).unwrap());
    assert!((m - 4.0).abs() <= 3.0 * se, "mean {m}, se {se}");
}

#[test]
fn ws_and_ba_edge_counts_are_exact() {
    for s in 0..100 {
        assert_eq!(gen_ws(1000, 4, 0.5, s).unwrap().edge_count(), 2000);
        assert_eq!(gen_ba(1000, 2, s).unwrap().edge_count(), 1997);
    }
}
