//! Slow reference computations used to check the fast paths in tests.
//!
//! Nothing here shares code with the reductions or matchings it checks:
//! homology ranks come from dense Gaussian elimination over GF(2), and the
//! bottleneck distance from enumerating every partial matching.

use crate::complex::FilteredComplex;
use crate::diagram::PersistenceDiagram;

/// Dense GF(2) vector.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }
    fn xor(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
    fn highest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }
}

/// Incremental XOR basis keyed by highest set bit.
struct Basis {
    by_pivot: std::collections::HashMap<usize, Bits>,
}

impl Basis {
    fn new() -> Self {
        Basis {
            by_pivot: Default::default(),
        }
    }
    /// Inserts `v`; returns the residue (zero when `v` was already in the span).
    fn insert(&mut self, mut v: Bits) -> bool {
        while let Some(h) = v.highest() {
            match self.by_pivot.get(&h) {
                Some(b) => v.xor(b),
                None => {
                    self.by_pivot.insert(h, v);
                    return true;
                }
            }
        }
        false
    }
    fn rank(&self) -> usize {
        self.by_pivot.len()
    }
}

fn boundary_vector(fc: &FilteredComplex, pos: usize, index: &std::collections::HashMap<crate::complex::Simplex, usize>) -> Bits {
    let mut v = Bits::zeros(fc.len());
    for f in fc.simplices()[pos].facets() {
        v.set(index[&f]);
    }
    v
}

/// Cycle-space basis of dimension `p` among the first `a` simplices.
fn cycle_basis(fc: &FilteredComplex, a: usize, p: usize) -> Vec<Bits> {
    let index = fc.position_index();
    let n = fc.len();
    // Columns (boundary, combination) reduced against earlier columns.
    let mut reduced: Vec<(Bits, Bits)> = Vec::new();
    let mut cycles = Vec::new();
    for pos in (0..a).filter(|&i| fc.simplices()[i].dim() == p) {
        let mut bd = if p == 0 { Bits::zeros(n) } else { boundary_vector(fc, pos, &index) };
        let mut comb = Bits::zeros(n);
        comb.set(pos);
        loop {
            let Some(h) = bd.highest() else {
                cycles.push(comb);
                break;
            };
            match reduced.iter().find(|(b, _)| b.highest() == Some(h)) {
                Some((b, c)) => {
                    bd.xor(b);
                    comb.xor(c);
                }
                None => {
                    reduced.push((bd, comb));
                    break;
                }
            }
        }
    }
    cycles
}

/// Rank of the map `H_p(K_a) -> H_p(K_b)` induced by inclusion, where `K_m`
/// is the first `m` simplices of the filtration and `a <= b`.
pub fn persistent_rank(fc: &FilteredComplex, a: usize, b: usize, p: usize) -> usize {
    assert!(a <= b && b <= fc.len());
    let index = fc.position_index();
    let mut boundaries = Basis::new();
    for pos in (0..b).filter(|&i| fc.simplices()[i].dim() == p + 1) {
        boundaries.insert(boundary_vector(fc, pos, &index));
    }
    let rank_b = boundaries.rank();
    for z in cycle_basis(fc, a, p) {
        boundaries.insert(z);
    }
    boundaries.rank() - rank_b
}

/// Betti numbers of the whole complex from ranks of the boundary maps:
/// `beta_p = dim ker d_p - rank d_{p+1}`.
pub fn betti_by_rank(fc: &FilteredComplex) -> [usize; 4] {
    let index = fc.position_index();
    let mut counts = [0usize; 5];
    let mut ranks = [0usize; 5];
    let mut bases: Vec<Basis> = (0..5).map(|_| Basis::new()).collect();
    for (pos, s, _) in fc.iter() {
        counts[s.dim()] += 1;
        if s.dim() > 0 && bases[s.dim()].insert(boundary_vector(fc, pos, &index)) {
            ranks[s.dim()] += 1;
        }
    }
    let mut betti = [0; 4];
    for p in 0..4 {
        betti[p] = counts[p] - ranks[p] - ranks[p + 1];
    }
    betti
}

/// Bottleneck distance by trying every partial matching. Points are expanded
/// by multiplicity; diagonal points are dropped. Intended for a handful of points.
pub fn bottleneck_exhaustive(x: &PersistenceDiagram, y: &PersistenceDiagram) -> f64 {
    let expand = |d: &PersistenceDiagram| -> Vec<(f64, f64)> {
        d.points
            .iter()
            .filter(|p| p.death > p.birth)
            .flat_map(|p| std::iter::repeat_n((p.birth, p.death), p.multiplicity))
            .collect()
    };
    let xs = expand(x);
    let ys = expand(y);
    assert!(xs.len() <= 10 && ys.len() <= 10, "exhaustive matching is for tiny diagrams");
    let mut used = vec![false; ys.len()];
    let mut best = f64::INFINITY;
    search(&xs, &ys, 0, 0.0, &mut used, &mut best);
    best
}

fn search(xs: &[(f64, f64)], ys: &[(f64, f64)], i: usize, cost: f64, used: &mut [bool], best: &mut f64) {
    if cost >= *best {
        return;
    }
    if i == xs.len() {
        let rest = ys
            .iter()
            .zip(used.iter())
            .filter(|(_, &u)| !u)
            .map(|(q, _)| (q.1 - q.0) / 2.0)
            .fold(cost, f64::max);
        if rest < *best {
            *best = rest;
        }
        return;
    }
    let p = xs[i];
    search(xs, ys, i + 1, cost.max((p.1 - p.0) / 2.0), used, best);
    for j in 0..ys.len() {
        if !used[j] {
            used[j] = true;
            let q = ys[j];
            let d = (p.0 - q.0).abs().max((p.1 - q.1).abs());
            search(xs, ys, i + 1, cost.max(d), used, best);
            used[j] = false;
        }
    }
}
