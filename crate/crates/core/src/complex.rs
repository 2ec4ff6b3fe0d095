//! Clique complexes capped at dimension 3 and their weighted filtrations.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::curvature::sorted_intersection_len;
use crate::error::StructureError;
use crate::graph::{Graph, VertexId};

/// Highest simplex dimension supported.
pub const MAX_DIM: usize = 3;

/// A clique of 1 to 4 vertices, stored in ascending order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Simplex {
    verts: [u32; 4],
    len: u8,
}

impl Simplex {
    /// Builds a simplex from ascending, distinct vertices.
    pub fn new(vertices: &[VertexId]) -> Result<Self, StructureError> {
        let ok = !vertices.is_empty()
            && vertices.len() <= MAX_DIM + 1
            && vertices.windows(2).all(|w| w[0] < w[1])
            && vertices.iter().all(|&v| v <= u32::MAX as usize);
        if !ok {
            return Err(StructureError::MalformedSimplex(vertices.to_vec()));
        }
        let mut verts = [0u32; 4];
        for (slot, &v) in verts.iter_mut().zip(vertices) {
            *slot = v as u32;
        }
        Ok(Simplex {
            verts,
            len: vertices.len() as u8,
        })
    }

    /// Sorts and deduplicates `vertices` first.
    pub fn from_unsorted(vertices: &[VertexId]) -> Result<Self, StructureError> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(StructureError::MalformedSimplex(vertices.to_vec()));
        }
        Simplex::new(&v)
    }

    pub(crate) fn from_sorted_unchecked(vertices: &[u32]) -> Self {
        let mut verts = [0u32; 4];
        verts[..vertices.len()].copy_from_slice(vertices);
        Simplex {
            verts,
            len: vertices.len() as u8,
        }
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex::from_sorted_unchecked(&[v as u32])
    }

    pub fn dim(&self) -> usize {
        self.len as usize - 1
    }

    pub fn raw(&self) -> &[u32] {
        &self.verts[..self.len as usize]
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.raw().iter().map(|&v| v as usize).collect()
    }

    /// Codimension-1 faces, the `i`-th omitting the `i`-th vertex.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let len = self.len as usize;
        let count = if len > 1 { len } else { 0 };
        (0..count).map(move |skip| {
            let mut buf = [0u32; 3];
            let mut k = 0;
            for (i, &v) in self.raw().iter().enumerate() {
                if i != skip {
                    buf[k] = v;
                    k += 1;
                }
            }
            Simplex::from_sorted_unchecked(&buf[..k])
        })
    }

    /// Edges (1-faces) of the simplex; a single edge yields itself.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let r = self.raw();
        (0..r.len()).flat_map(move |i| (i + 1..r.len()).map(move |j| (r[i] as usize, r[j] as usize)))
    }
}

impl Ord for Simplex {
    /// Lexicographic on the vertex tuple.
    fn cmp(&self, other: &Self) -> Ordering {
        self.raw().cmp(other.raw())
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.raw())
    }
}

/// Canonical order used for unweighted simplex lists: dimension, then vertices.
pub fn canonical_cmp(a: &Simplex, b: &Simplex) -> Ordering {
    a.dim().cmp(&b.dim()).then_with(|| a.cmp(b))
}

/// All cliques of `g` with at most `max_dim + 1` vertices, in canonical order.
pub fn enumerate_cliques(g: &Graph, max_dim: usize) -> Vec<Simplex> {
    let max_dim = max_dim.min(MAX_DIM);
    let mut out: Vec<Simplex> = (0..g.n()).map(Simplex::vertex).collect();
    if max_dim == 0 {
        return out;
    }
    out.extend(
        g.edges()
            .iter()
            .map(|e| Simplex::from_sorted_unchecked(&[e.u as u32, e.v as u32])),
    );
    if max_dim == 1 {
        return out;
    }

    // Triangles (a, b, c) with a < b < c: common neighbours of each edge above its larger end.
    let mut triangles: Vec<[u32; 3]> = Vec::new();
    for e in g.edges() {
        for c in common_above(g.neighbors(e.u), g.neighbors(e.v), e.v) {
            triangles.push([e.u as u32, e.v as u32, c as u32]);
        }
    }
    out.extend(triangles.iter().map(|t| Simplex::from_sorted_unchecked(t)));
    if max_dim == 2 {
        return out;
    }

    let mut tetra: Vec<Simplex> = Vec::new();
    for t in &triangles {
        let (a, b, c) = (t[0] as usize, t[1] as usize, t[2] as usize);
        let ab: Vec<usize> = common_above(g.neighbors(a), g.neighbors(b), c).collect();
        for d in common_above(&ab, g.neighbors(c), c) {
            tetra.push(Simplex::from_sorted_unchecked(&[t[0], t[1], t[2], d as u32]));
        }
    }
    out.extend(tetra);
    out
}

fn common_above<'a>(a: &'a [usize], b: &'a [usize], floor: usize) -> impl Iterator<Item = usize> + 'a {
    let start_a = a.partition_point(|&x| x <= floor);
    let start_b = b.partition_point(|&x| x <= floor);
    let (mut i, mut j) = (start_a, start_b);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    let x = a[i];
                    i += 1;
                    j += 1;
                    return Some(x);
                }
            }
        }
        None
    })
}

/// Number of triangles in `g`, computed edge-wise (`sum_e m(e) / 3`).
pub fn triangle_count(g: &Graph) -> usize {
    let total: usize = g
        .edges()
        .iter()
        .map(|e| sorted_intersection_len(g.neighbors(e.u), g.neighbors(e.v)))
        .sum();
    total / 3
}

/// A weighted simplicial complex listed in filtration order.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    weights: Vec<f64>,
}

impl FilteredComplex {
    /// Wraps an already ordered list without checking it. Use
    /// [`validate_complex`] before computing persistence from untrusted input.
    pub fn from_ordered(simplices: Vec<Simplex>, weights: Vec<f64>) -> Result<Self, StructureError> {
        if simplices.len() != weights.len() {
            return Err(StructureError::WeightCount {
                count: weights.len(),
                expected: simplices.len(),
            });
        }
        Ok(FilteredComplex { simplices, weights })
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Simplex, f64)> {
        self.simplices
            .iter()
            .zip(&self.weights)
            .enumerate()
            .map(|(i, (s, &w))| (i, s, w))
    }

    /// Distinct weight levels in ascending order.
    pub fn levels(&self) -> Vec<f64> {
        let mut levels: Vec<f64> = Vec::new();
        for &w in &self.weights {
            if levels.last() != Some(&w) {
                levels.push(w);
            }
        }
        levels
    }

    /// Number of simplices with weight at most `r`; the filtration prefix of that
    /// length is the sublevel complex at `r`.
    pub fn prefix_len(&self, r: f64) -> usize {
        self.weights.partition_point(|&w| w <= r)
    }

    /// Map from simplex to filtration position.
    pub fn position_index(&self) -> HashMap<Simplex, usize> {
        self.simplices.iter().enumerate().map(|(i, s)| (*s, i)).collect()
    }

    pub fn count_by_dim(&self) -> [usize; MAX_DIM + 1] {
        let mut counts = [0; MAX_DIM + 1];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    pub fn max_weight(&self) -> Option<f64> {
        self.weights.last().copied()
    }
}

/// Orders simplices by (weight, dimension, vertex tuple) after checking that
/// every face is present with weight no larger than its coface.
pub fn build_filtration(simplices: Vec<Simplex>, weights: Vec<f64>) -> Result<FilteredComplex, StructureError> {
    if simplices.len() != weights.len() {
        return Err(StructureError::WeightCount {
            count: weights.len(),
            expected: simplices.len(),
        });
    }
    let lookup: HashMap<Simplex, f64> = simplices.iter().copied().zip(weights.iter().copied()).collect();
    for (s, &w) in simplices.iter().zip(&weights) {
        for face in s.facets() {
            match lookup.get(&face) {
                None => {
                    return Err(StructureError::MissingFace {
                        face: face.vertices(),
                        simplex: s.vertices(),
                    })
                }
                Some(&fw) if fw > w => {
                    return Err(StructureError::NonMonotone {
                        face: face.vertices(),
                        face_weight: fw,
                        coface: s.vertices(),
                        coface_weight: w,
                    })
                }
                Some(_) => {}
            }
        }
    }
    let mut order: Vec<(Simplex, f64)> = simplices.into_iter().zip(weights).collect();
    order.sort_by(|(sa, wa), (sb, wb)| wa.total_cmp(wb).then_with(|| canonical_cmp(sa, sb)));
    let (simplices, weights) = order.into_iter().unzip();
    Ok(FilteredComplex { simplices, weights })
}

/// One problem found by [`validate_complex`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    FaceMissing { position: usize, face: Vec<usize> },
    FaceAfterCoface { face_position: usize, coface_position: usize },
    WeightDecreases { position: usize },
    FaceHeavier { face_position: usize, coface_position: usize },
    Duplicate { first: usize, second: usize },
    NonFinite { position: usize },
}

/// Result of [`validate_complex`]; empty when the filtration is sound.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        write!(f, "{} violation(s); first: {:?}", self.violations.len(), self.violations[0])
    }
}

/// Checks closure under faces, face-before-coface order, and non-decreasing weights.
pub fn validate_complex(fc: &FilteredComplex) -> ValidationReport {
    let mut violations = Vec::new();
    let mut index: HashMap<Simplex, usize> = HashMap::with_capacity(fc.len());
    for (pos, s) in fc.simplices.iter().enumerate() {
        if let Some(first) = index.insert(*s, pos) {
            violations.push(Violation::Duplicate { first, second: pos });
        }
    }
    for (pos, s, w) in fc.iter() {
        if !w.is_finite() {
            violations.push(Violation::NonFinite { position: pos });
        }
        if pos > 0 && fc.weights[pos - 1] > w {
            violations.push(Violation::WeightDecreases { position: pos });
        }
        for face in s.facets() {
            match index.get(&face) {
                None => violations.push(Violation::FaceMissing {
                    position: pos,
                    face: face.vertices(),
                }),
                Some(&fp) => {
                    if fp > pos {
                        violations.push(Violation::FaceAfterCoface {
                            face_position: fp,
                            coface_position: pos,
                        });
                    }
                    if fc.weights[fp] > w {
                        violations.push(Violation::FaceHeavier {
                            face_position: fp,
                            coface_position: pos,
                        });
                    }
                }
            }
        }
    }
    ValidationReport { violations }
}
