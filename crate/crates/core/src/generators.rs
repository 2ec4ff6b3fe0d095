//! Seeded generators for the five model-network families.
//!
//! Every generator draws from a [`ChaCha8Rng`] seeded with `seed_from_u64(seed)`,
//! so a spec plus seed always yields the same edge set on every platform.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GeneratorError;
use crate::graph::Graph;

/// Model family and its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Erdős–Rényi with edge probability `p`.
    Er { p: f64 },
    /// Watts–Strogatz ring with `k` neighbours and rewiring probability `p`.
    Ws { k: usize, p: f64 },
    /// Barabási–Albert preferential attachment with `m` edges per new vertex.
    Ba { m: usize },
    /// Hyperbolic disk at zero temperature with target mean degree `k` and
    /// degree exponent `gamma`.
    Hyperbolic { k: f64, gamma: f64 },
    /// Uniform points on the sphere joined below an angular threshold chosen
    /// for expected degree `k`.
    Spherical { k: f64 },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Er { .. } => "er",
            Family::Ws { .. } => "ws",
            Family::Ba { .. } => "ba",
            Family::Hyperbolic { .. } => "hyp",
            Family::Spherical { .. } => "sph",
        }
    }

    /// Stable small integer per family, used for seed stream separation.
    pub fn stream_id(&self) -> u64 {
        match self {
            Family::Er { .. } => 1,
            Family::Ws { .. } => 2,
            Family::Ba { .. } => 3,
            Family::Hyperbolic { .. } => 4,
            Family::Spherical { .. } => 5,
        }
    }
}

/// Family, size and seed of one generated graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
}

impl ModelSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        ModelSpec { family, n, seed }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        ModelSpec { seed, ..self }
    }

    // Negated comparisons also reject NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<(), GeneratorError> {
        let bad = |msg: String| Err(GeneratorError::InvalidParameter(msg));
        let n = self.n;
        match self.family {
            Family::Er { p } if !(0.0..=1.0).contains(&p) => bad(format!("ER probability {p} outside [0, 1]")),
            Family::Ws { k, p } => {
                if !(0.0..=1.0).contains(&p) {
                    bad(format!("WS rewiring probability {p} outside [0, 1]"))
                } else if k == 0 || k % 2 != 0 || k >= n {
                    bad(format!("WS needs an even k with 0 < k < n (k = {k}, n = {n})"))
                } else {
                    Ok(())
                }
            }
            Family::Ba { m } if m == 0 || m >= n => bad(format!("BA needs 1 <= m < n (m = {m}, n = {n})")),
            Family::Hyperbolic { k, gamma } => {
                if !(gamma > 1.0) || !gamma.is_finite() {
                    bad(format!("hyperbolic exponent gamma must be finite and > 1 (got {gamma})"))
                } else if !(k > 0.0) {
                    bad(format!("target degree must be positive (got {k})"))
                } else {
                    Ok(())
                }
            }
            Family::Spherical { k } => {
                if !(k >= 1.0) || (n > 1 && k > (n - 1) as f64) {
                    bad(format!("spherical target degree must lie in [1, n - 1] (got {k})"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Graph, GeneratorError> {
        self.validate()?;
        match self.family {
            Family::Er { p } => Ok(gen_er(self.n, p, self.seed)),
            Family::Ws { k, p } => gen_ws(self.n, k, p, self.seed),
            Family::Ba { m } => gen_ba(self.n, m, self.seed),
            Family::Hyperbolic { k, gamma } => gen_hyperbolic(self.n, k, gamma, self.seed),
            Family::Spherical { k } => gen_spherical(self.n, k, self.seed),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match self.family {
            Family::Er { p } => write!(f, "er(n={n},p={p})"),
            Family::Ws { k, p } => write!(f, "ws(n={n},k={k},p={p})"),
            Family::Ba { m } => write!(f, "ba(n={n},m={m})"),
            Family::Hyperbolic { k, gamma } => write!(f, "hyp(n={n},k={k},gamma={gamma})"),
            Family::Spherical { k } => write!(f, "sph(n={n},k={k})"),
        }
    }
}

/// Family names accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyName {
    Er,
    Ws,
    Ba,
    Hyp,
    Sph,
}

impl FromStr for FamilyName {
    type Err = GeneratorError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "er" => Ok(FamilyName::Er),
            "ws" => Ok(FamilyName::Ws),
            "ba" => Ok(FamilyName::Ba),
            "hyp" | "hyperbolic" => Ok(FamilyName::Hyp),
            "sph" | "spherical" => Ok(FamilyName::Sph),
            other => Err(GeneratorError::InvalidParameter(format!("unknown model {other:?}"))),
        }
    }
}

/// The five families at a common mean degree, matching the settings used to
/// compare models: ER with `p = k / (n - 1)`, WS with rewiring 0.5, BA with
/// `m = k / 2`, hyperbolic with `gamma = 2`, and spherical.
pub fn degree_matched_families(n: usize, k: usize) -> [Family; 5] {
    [
        Family::Er {
            p: k as f64 / (n as f64 - 1.0),
        },
        Family::Ws { k, p: 0.5 },
        Family::Ba { m: (k / 2).max(1) },
        Family::Spherical { k: k as f64 },
        Family::Hyperbolic { k: k as f64, gamma: 2.0 },
    ]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each of the `n(n-1)/2` pairs independently with probability `p`.
pub fn gen_er(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    Graph::from_edges(n, pairs)
}

/// Ring lattice where vertex `i` links to `i+1..=i+k/2`; each such edge has its
/// far end moved with probability `p` to a uniform vertex that creates neither a
/// self-loop nor a duplicate. Edge count stays `n k / 2`.
pub fn gen_ws(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph, GeneratorError> {
    ModelSpec::new(Family::Ws { k, p }, n, seed).validate()?;
    let mut rng = rng(seed);
    let mut adj: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n];
    for i in 0..n {
        for j in 1..=k / 2 {
            let t = (i + j) % n;
            adj[i].insert(t);
            adj[t].insert(i);
        }
    }
    for j in 1..=k / 2 {
        for i in 0..n {
            let t = (i + j) % n;
            if !rng.gen_bool(p) || adj[i].len() >= n - 1 || !adj[i].contains(&t) {
                continue;
            }
            let mut w = rng.gen_range(0..n);
            while w == i || adj[i].contains(&w) {
                w = rng.gen_range(0..n);
            }
            adj[i].remove(&t);
            adj[t].remove(&i);
            adj[i].insert(w);
            adj[w].insert(i);
        }
    }
    let pairs = adj
        .iter()
        .enumerate()
        .flat_map(|(a, nb)| nb.iter().filter(move |&&b| b > a).map(move |&b| (a, b)));
    Ok(Graph::from_edges(n, pairs))
}

/// Preferential attachment seeded with a complete graph on `m` vertices. Each
/// new vertex picks `m` distinct targets with probability proportional to
/// current degree (uniformly while all degrees are zero).
pub fn gen_ba(n: usize, m: usize, seed: u64) -> Result<Graph, GeneratorError> {
    ModelSpec::new(Family::Ba { m }, n, seed).validate()?;
    let mut rng = rng(seed);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    // Each vertex appears once per incident edge.
    let mut endpoints: Vec<usize> = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            pairs.push((a, b));
            endpoints.push(a);
            endpoints.push(b);
        }
    }
    let mut targets: Vec<usize> = Vec::with_capacity(m);
    for v in m..n {
        targets.clear();
        if endpoints.is_empty() {
            let mut pool: Vec<usize> = (0..v).collect();
            pool.shuffle(&mut rng);
            targets.extend(pool.into_iter().take(m));
        } else {
            while targets.len() < m {
                let t = endpoints[rng.gen_range(0..endpoints.len())];
                if !targets.contains(&t) {
                    targets.push(t);
                }
            }
        }
        for &t in &targets {
            pairs.push((v, t));
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    Ok(Graph::from_edges(n, pairs))
}

/// Uniform points on the unit sphere, joined when their angular distance is at
/// most `theta = acos(1 - 2k / (n - 1))`, so each vertex expects `k` neighbours.
pub fn gen_spherical(n: usize, k: f64, seed: u64) -> Result<Graph, GeneratorError> {
    ModelSpec::new(Family::Spherical { k }, n, seed).validate()?;
    if n <= 1 {
        return Ok(Graph::from_edges(n, []));
    }
    let cos_theta = spherical_cos_threshold(n, k);
    let mut rng = rng(seed);
    let points: Vec<[f64; 3]> = (0..n)
        .map(|_| {
            let z: f64 = rng.gen_range(-1.0..=1.0);
            let phi: f64 = rng.gen_range(0.0..2.0 * PI);
            let r = (1.0 - z * z).max(0.0).sqrt();
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let dot: f64 = (0..3).map(|i| points[a][i] * points[b][i]).sum();
            if dot >= cos_theta {
                pairs.push((a, b));
            }
        }
    }
    Ok(Graph::from_edges(n, pairs))
}

/// `cos(theta)` for the spherical threshold; `-1` (theta = pi) makes the graph complete.
pub fn spherical_cos_threshold(n: usize, k: f64) -> f64 {
    if k >= (n - 1) as f64 {
        -1.0
    } else {
        1.0 - 2.0 * k / (n as f64 - 1.0)
    }
}

/// Native hyperbolic disk model at zero temperature.
///
/// Angles are uniform on `[0, 2 pi)` and radii have density proportional to
/// `sinh(alpha r)` on `[0, R]` with `alpha = (gamma - 1) / 2`. Two vertices are
/// joined when their hyperbolic distance is at most `R`. The disk radius is set
/// by [`calibrate_disk_radius`] so the expected mean degree is `k`.
pub fn gen_hyperbolic(n: usize, k: f64, gamma: f64, seed: u64) -> Result<Graph, GeneratorError> {
    ModelSpec::new(Family::Hyperbolic { k, gamma }, n, seed).validate()?;
    if n <= 1 {
        return Ok(Graph::from_edges(n, []));
    }
    if k >= (n - 1) as f64 {
        let all = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        return Ok(Graph::from_edges(n, all));
    }
    let alpha = (gamma - 1.0) / 2.0;
    let radius = calibrate_disk_radius(n, k, alpha)?;
    let mut rng = rng(seed);
    let points: Vec<HyperbolicPoint> = (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            let theta: f64 = rng.gen_range(0.0..2.0 * PI);
            HyperbolicPoint::new(sample_radius(u, alpha, radius), theta)
        })
        .collect();
    let cosh_r = radius.cosh();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if points[a].cosh_distance(&points[b]) <= cosh_r {
                pairs.push((a, b));
            }
        }
    }
    Ok(Graph::from_edges(n, pairs))
}

#[derive(Debug, Clone, Copy)]
struct HyperbolicPoint {
    cosh_r: f64,
    sinh_r: f64,
    theta: f64,
}

impl HyperbolicPoint {
    fn new(r: f64, theta: f64) -> Self {
        HyperbolicPoint {
            cosh_r: r.cosh(),
            sinh_r: r.sinh(),
            theta,
        }
    }

    fn cosh_distance(&self, other: &Self) -> f64 {
        self.cosh_r * other.cosh_r - self.sinh_r * other.sinh_r * (self.theta - other.theta).cos()
    }
}

/// Inverse CDF of the radial density `alpha sinh(alpha r) / (cosh(alpha R) - 1)`.
fn sample_radius(u: f64, alpha: f64, radius: f64) -> f64 {
    (1.0 + u * ((alpha * radius).cosh() - 1.0)).acosh() / alpha
}

/// Probability that two independent vertices at radii `r1`, `r2` are within
/// distance `radius`: the admissible angle over `pi`.
fn connection_probability(r1: f64, r2: f64, radius: f64) -> f64 {
    if r1 + r2 <= radius {
        return 1.0;
    }
    let denom = r1.sinh() * r2.sinh();
    if denom == 0.0 {
        return 1.0;
    }
    let c = (r1.cosh() * r2.cosh() - radius.cosh()) / denom;
    if c >= 1.0 {
        0.0
    } else if c <= -1.0 {
        1.0
    } else {
        c.acos() / PI
    }
}

/// Expected mean degree `(n - 1) P(d <= R)` by midpoint quadrature over the
/// radial quantiles of both endpoints.
///
/// Quantile cells are graded as `(i / G)^4`: vertices near the centre are rare
/// but have degree growing like the inverse of their quantile, and a uniform
/// grid misses enough of that tail to bias the result by several percent.
pub fn expected_hyperbolic_degree(n: usize, alpha: f64, radius: f64) -> f64 {
    const GRID: usize = 400;
    const GRADING: i32 = 4;
    let edge = |i: usize| (i as f64 / GRID as f64).powi(GRADING);
    let cells: Vec<(f64, f64)> = (0..GRID)
        .map(|i| {
            let (a, b) = (edge(i), edge(i + 1));
            (sample_radius(0.5 * (a + b), alpha, radius), b - a)
        })
        .collect();
    let mut total = 0.0;
    for (i, &(r1, w1)) in cells.iter().enumerate() {
        // Symmetric integrand: diagonal once, off-diagonal twice.
        total += w1 * w1 * connection_probability(r1, r1, radius);
        for &(r2, w2) in &cells[i + 1..] {
            total += 2.0 * w1 * w2 * connection_probability(r1, r2, radius);
        }
    }
    (n as f64 - 1.0) * total
}

/// Disk radius whose expected mean degree is `k`, found by bisection.
pub fn calibrate_disk_radius(n: usize, k: f64, alpha: f64) -> Result<f64, GeneratorError> {
    let degree = |r: f64| expected_hyperbolic_degree(n, alpha, r);
    let mut lo = 1e-3;
    let mut hi = 2.0 * (n as f64).ln().max(1.0);
    let mut grow = 0;
    while degree(hi) > k {
        hi *= 2.0;
        grow += 1;
        if grow > 8 || !hi.is_finite() {
            return Err(GeneratorError::Calibration(format!(
                "mean degree still above {k} at radius {hi}"
            )));
        }
    }
    if degree(lo) < k {
        return Err(GeneratorError::Calibration(format!(
            "mean degree below {k} even at radius {lo}"
        )));
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if degree(mid) > k {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-9 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
