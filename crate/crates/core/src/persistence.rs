//! Persistent homology over the two-element field by boundary-matrix reduction.

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::{FilteredComplex, Simplex, MAX_DIM};
use crate::error::StructureError;
use crate::weighting::TOP_WEIGHT;

/// Sparse boundary matrix with mod-2 coefficients. Column `j` holds the
/// ascending filtration positions of the facets of simplex `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    columns: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl BoundaryMatrix {
    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Mod-2 image of column `j` under the boundary map: `∂(∂ e_j)`.
    pub fn boundary_of_boundary(&self, j: usize) -> Vec<usize> {
        let mut acc: Vec<usize> = Vec::new();
        for &face in &self.columns[j] {
            acc = symmetric_difference(&acc, &self.columns[face]);
        }
        acc
    }
}

/// Builds the boundary matrix in filtration order.
pub fn boundary_matrix(fc: &FilteredComplex) -> Result<BoundaryMatrix, StructureError> {
    let index: HashMap<Simplex, usize> = fc.position_index();
    let mut columns = Vec::with_capacity(fc.len());
    let mut dims = Vec::with_capacity(fc.len());
    for (pos, s, _) in fc.iter() {
        let mut col = Vec::with_capacity(s.dim() + 1);
        for face in s.facets() {
            let &fp = index.get(&face).ok_or_else(|| StructureError::MissingFace {
                face: face.vertices(),
                simplex: s.vertices(),
            })?;
            if fp >= pos {
                return Err(StructureError::InvalidFiltration(format!(
                    "face {:?} at position {fp} does not precede {:?} at {pos}",
                    face, s
                )));
            }
            col.push(fp);
        }
        col.sort_unstable();
        columns.push(col);
        dims.push(s.dim());
    }
    Ok(BoundaryMatrix { columns, dims })
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Index-level outcome of a reduction: `(birth, death)` position pairs and the
/// positions of essential (never-killed) classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Reduction {
    pub pairs: Vec<(usize, usize)>,
    pub essential: Vec<usize>,
}

impl Reduction {
    fn from_pivots(n: usize, mut pairs: Vec<(usize, usize)>) -> Self {
        let mut touched = vec![false; n];
        for &(b, d) in &pairs {
            touched[b] = true;
            touched[d] = true;
        }
        let essential = (0..n).filter(|&i| !touched[i]).collect();
        pairs.sort_unstable();
        Reduction { pairs, essential }
    }
}

/// Column reduction with clearing: dimensions are processed from the top down,
/// and a column whose simplex is already known to be a birth is zeroed without
/// being reduced.
pub fn reduce(m: &BoundaryMatrix) -> Reduction {
    let n = m.len();
    let mut cols: Vec<Vec<usize>> = m.columns.clone();
    let mut owner_of_low: Vec<Option<usize>> = vec![None; n];
    let mut cleared = vec![false; n];
    let mut pairs = Vec::new();

    let top = m.dims.iter().copied().max().unwrap_or(0);
    for dim in (1..=top).rev() {
        for j in (0..n).filter(|&j| m.dims[j] == dim) {
            if cleared[j] {
                cols[j].clear();
                continue;
            }
            reduce_column(&mut cols, j, &mut owner_of_low);
            if let Some(&low) = cols[j].last() {
                cleared[low] = true;
                pairs.push((low, j));
            }
        }
    }
    Reduction::from_pivots(n, pairs)
}

/// Plain left-to-right reduction without clearing.
pub fn reduce_standard(m: &BoundaryMatrix) -> Reduction {
    let n = m.len();
    let mut cols: Vec<Vec<usize>> = m.columns.clone();
    let mut owner_of_low: Vec<Option<usize>> = vec![None; n];
    let mut pairs = Vec::new();
    for j in 0..n {
        reduce_column(&mut cols, j, &mut owner_of_low);
        if let Some(&low) = cols[j].last() {
            pairs.push((low, j));
        }
    }
    Reduction::from_pivots(n, pairs)
}

fn reduce_column(cols: &mut [Vec<usize>], j: usize, owner_of_low: &mut [Option<usize>]) {
    while let Some(&low) = cols[j].last() {
        match owner_of_low[low] {
            Some(k) => {
                let merged = symmetric_difference(&cols[j], &cols[k]);
                cols[j] = merged;
            }
            None => {
                owner_of_low[low] = Some(j);
                return;
            }
        }
    }
}

/// A persistence interval in both index and weight coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth_index: usize,
    pub death_index: Option<usize>,
    pub birth: f64,
    pub death: Option<f64>,
}

impl PersistencePair {
    pub fn is_essential(&self) -> bool {
        self.death_index.is_none()
    }

    /// Death weight, with essential classes capped at [`TOP_WEIGHT`].
    pub fn death_capped(&self) -> f64 {
        self.death.unwrap_or(TOP_WEIGHT)
    }

    pub fn persistence(&self) -> f64 {
        self.death_capped() - self.birth
    }
}

/// Attaches dimensions and weights to an index-level reduction, sorted by
/// (dimension, birth position).
pub fn pairs_from_reduction(fc: &FilteredComplex, red: &Reduction) -> Vec<PersistencePair> {
    let simplices = fc.simplices();
    let weights = fc.weights();
    let mut out: Vec<PersistencePair> = red
        .pairs
        .iter()
        .map(|&(b, d)| PersistencePair {
            dim: simplices[b].dim(),
            birth_index: b,
            death_index: Some(d),
            birth: weights[b],
            death: Some(weights[d]),
        })
        .chain(red.essential.iter().map(|&b| PersistencePair {
            dim: simplices[b].dim(),
            birth_index: b,
            death_index: None,
            birth: weights[b],
            death: None,
        }))
        .collect();
    out.sort_by_key(|p| (p.dim, p.birth_index));
    out
}

/// Boundary matrix, clearing reduction and pairing in one call.
pub fn compute_persistence(fc: &FilteredComplex) -> Result<Vec<PersistencePair>, StructureError> {
    let m = boundary_matrix(fc)?;
    Ok(pairs_from_reduction(fc, &reduce(&m)))
}

/// Rank of `H_p(K_i) -> H_p(K_{i+j})` where `K_i` is the first `i` simplices
/// of the filtration (`0 <= i <= i + j <= n`).
pub fn persistent_betti(
    pairs: &[PersistencePair],
    n_simplices: usize,
    i: usize,
    j: usize,
    p: usize,
) -> Result<usize, StructureError> {
    let end = i + j;
    if end > n_simplices {
        return Err(StructureError::StageOutOfRange {
            stage: end,
            n: n_simplices,
        });
    }
    Ok(pairs
        .iter()
        .filter(|q| q.dim == p && q.birth_index < i && q.death_index.is_none_or(|d| d >= end))
        .count())
}

/// Betti numbers of the whole complex, dimensions 0 through 3.
pub fn betti_numbers(pairs: &[PersistencePair]) -> [usize; MAX_DIM + 1] {
    let mut b = [0; MAX_DIM + 1];
    for p in pairs.iter().filter(|p| p.is_essential()) {
        b[p.dim] += 1;
    }
    b
}

/// One bar of a barcode, in weight coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub birth: f64,
    /// Capped at 1.0 for essential bars.
    pub death: f64,
    pub essential: bool,
    pub birth_index: usize,
    pub death_index: Option<usize>,
}

impl Interval {
    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

/// Bars per dimension 0..=3.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Barcode {
    pub bars: [Vec<Interval>; MAX_DIM + 1],
}

impl Barcode {
    pub fn dim(&self, p: usize) -> &[Interval] {
        &self.bars[p]
    }

    pub fn essential_count(&self, p: usize) -> usize {
        self.bars[p].iter().filter(|b| b.essential).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Interval)> {
        self.bars
            .iter()
            .enumerate()
            .flat_map(|(d, list)| list.iter().map(move |b| (d, b)))
    }

    pub fn is_empty(&self) -> bool {
        self.bars.iter().all(Vec::is_empty)
    }
}

/// Groups pairs into per-dimension bars. Zero-length bars are kept.
pub fn barcodes(pairs: &[PersistencePair]) -> Barcode {
    let mut bc = Barcode::default();
    for p in pairs {
        bc.bars[p.dim].push(Interval {
            birth: p.birth,
            death: p.death_capped(),
            essential: p.is_essential(),
            birth_index: p.birth_index,
            death_index: p.death_index,
        });
    }
    bc
}
