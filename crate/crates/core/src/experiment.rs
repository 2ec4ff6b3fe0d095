//! Pairwise bottleneck comparison of model families.
//!
//! Each family draws `samples` graphs. Sample seeds come from a [`ChaCha8Rng`]
//! seeded with the master seed on stream [`Family::stream_id`], so adding or
//! reordering families never changes another family's samples. Distances are
//! taken between total diagrams. Two different families are compared over all
//! `samples²` cross pairs, a family against itself over the
//! `samples (samples - 1) / 2` distinct pairs.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diagram::{bottleneck, DiagramKind, DistanceSummary, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::generators::{Family, ModelSpec};
use crate::io::fmt_report;
use crate::pipeline::{analyze, PipelineOptions};

/// Per-sample seeds for one family.
pub fn sample_seeds(master_seed: u64, family: &Family, samples: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(family.stream_id());
    (0..samples).map(|_| rng.next_u64()).collect()
}

/// Total persistence diagram of one generated graph.
pub fn total_diagram(spec: &ModelSpec, opts: &PipelineOptions) -> Result<PersistenceDiagram> {
    let g = spec.generate()?;
    Ok(analyze(&g, opts)?.diagram(DiagramKind::Total))
}

/// Distances between every element of `a` and every element of `b`, row-major.
pub fn cross_distances(a: &[PersistenceDiagram], b: &[PersistenceDiagram]) -> Vec<f64> {
    let pairs: Vec<(usize, usize)> = (0..a.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).collect();
    pairs.par_iter().map(|&(i, j)| bottleneck(&a[i], &b[j])).collect()
}

/// Distances between distinct elements of `a`, pairs `(i, j)` with `i < j`.
pub fn within_distances(a: &[PersistenceDiagram]) -> Vec<f64> {
    let pairs: Vec<(usize, usize)> = (0..a.len()).flat_map(|i| (i + 1..a.len()).map(move |j| (i, j))).collect();
    pairs.par_iter().map(|&(i, j)| bottleneck(&a[i], &a[j])).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonConfig {
    pub families: Vec<Family>,
    pub n: usize,
    pub samples: usize,
    pub master_seed: u64,
    pub options: PipelineOptions,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
}

fn run_in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    Ok(pool.install(f))
}

fn family_diagrams(cfg: &ComparisonConfig) -> Result<Vec<Vec<PersistenceDiagram>>> {
    let jobs: Vec<(usize, ModelSpec)> = cfg
        .families
        .iter()
        .enumerate()
        .flat_map(|(fi, fam)| {
            sample_seeds(cfg.master_seed, fam, cfg.samples)
                .into_iter()
                .map(move |seed| (fi, ModelSpec::new(*fam, cfg.n, seed)))
        })
        .collect();
    let diagrams: Vec<PersistenceDiagram> = jobs
        .par_iter()
        .map(|(_, spec)| total_diagram(spec, &cfg.options))
        .collect::<Result<_>>()?;
    let mut grouped: Vec<Vec<PersistenceDiagram>> = vec![Vec::new(); cfg.families.len()];
    for ((fi, _), d) in jobs.iter().zip(diagrams) {
        grouped[*fi].push(d);
    }
    Ok(grouped)
}

/// Compares two families (or one family with itself when `a == b`).
pub fn compare_models(a: Family, b: Family, cfg: &ComparisonConfig) -> Result<DistanceSummary> {
    let families = if a == b { vec![a] } else { vec![a, b] };
    let sub = ComparisonConfig {
        families,
        ..cfg.clone()
    };
    let m = run_model_comparison(&sub)?;
    Ok(m.get(0, m.len() - 1).clone())
}

/// Symmetric matrix of distance summaries between families.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonMatrix {
    pub labels: Vec<String>,
    cells: Vec<Vec<DistanceSummary>>,
}

impl ComparisonMatrix {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &DistanceSummary {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        &self.cells[lo][hi - lo]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Upper triangle including the diagonal, row by row.
    pub fn rows(&self) -> Vec<DistanceSummary> {
        self.cells.iter().flatten().cloned().collect()
    }

    /// Table of `mean ± stderr` rounded to two decimals.
    pub fn report(&self) -> String {
        let width = 14;
        let mut out = String::new();
        out.push_str(&format!("{:<6}", ""));
        for l in &self.labels {
            out.push_str(&format!("{l:>width$}"));
        }
        out.push('\n');
        for i in 0..self.len() {
            out.push_str(&format!("{:<6}", self.labels[i]));
            for j in 0..self.len() {
                let s = self.get(i, j);
                let cell = format!("{} ± {}", fmt_report(s.mean), fmt_report(s.stderr));
                out.push_str(&format!("{cell:>width$}"));
            }
            out.push('\n');
        }
        out.push_str("essential classes enter diagrams with death 1.0\n");
        out
    }
}

/// Generates every sample, computes total diagrams and fills the distance matrix.
/// The result does not depend on `cfg.jobs`.
pub fn run_model_comparison(cfg: &ComparisonConfig) -> Result<ComparisonMatrix> {
    for fam in &cfg.families {
        ModelSpec::new(*fam, cfg.n, 0).validate()?;
    }
    run_in_pool(cfg.jobs, || {
        let grouped = family_diagrams(cfg)?;
        let k = cfg.families.len();
        let labels: Vec<String> = cfg.families.iter().map(|f| f.tag().to_string()).collect();
        let mut cells = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::with_capacity(k - i);
            for j in i..k {
                let d = if i == j {
                    within_distances(&grouped[i])
                } else {
                    cross_distances(&grouped[i], &grouped[j])
                };
                row.push(DistanceSummary::from_distances(&labels[i], &labels[j], &d));
            }
            cells.push(row);
        }
        Ok(ComparisonMatrix { labels, cells })
    })?
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(families: Vec<Family>, jobs: usize) -> ComparisonConfig {
        ComparisonConfig {
            families,
            n: 60,
            samples: 3,
            master_seed: 11,
            options: PipelineOptions::default(),
            jobs,
        }
    }

    #[test]
    fn seeds_depend_on_family_only() {
        let er = Family::Er { p: 0.1 };
        let ba = Family::Ba { m: 2 };
        assert_eq!(sample_seeds(5, &er, 4), sample_seeds(5, &er, 4));
        assert_ne!(sample_seeds(5, &er, 4), sample_seeds(5, &ba, 4));
        assert_eq!(sample_seeds(5, &er, 4)[..2], sample_seeds(5, &er, 2)[..]);
    }

    #[test]
    fn identical_samples_have_zero_cross_distance_on_the_diagonal() {
        let spec = ModelSpec::new(Family::Er { p: 0.08 }, 50, 3);
        let ds: Vec<_> = (0..3)
            .map(|s| total_diagram(&spec.with_seed(s), &PipelineOptions::default()).unwrap())
            .collect();
        let d = cross_distances(&ds, &ds);
        for i in 0..3 {
            assert_eq!(d[i * 3 + i], 0.0);
        }
        assert_eq!(within_distances(&ds).len(), 3);
    }

    #[test]
    fn matrix_shape_and_pair_counts() {
        let fams = vec![Family::Er { p: 0.07 }, Family::Ba { m: 2 }];
        let m = run_model_comparison(&cfg(fams.clone(), 2)).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.get(0, 1), m.get(1, 0));
        assert_eq!(m.get(0, 1).n_pairs, 9);
        assert_eq!(m.get(0, 0).n_pairs, 3);
        assert_eq!(m.rows().len(), 3);
        let single = compare_models(fams[0], fams[1], &cfg(vec![], 1)).unwrap();
        assert_eq!(&single, m.get(0, 1));
        assert!(m.report().contains("±"));
    }

    #[test]
    fn independent_of_worker_count() {
        let fams = vec![Family::Er { p: 0.07 }, Family::Ws { k: 4, p: 0.5 }];
        let a = run_model_comparison(&cfg(fams.clone(), 1)).unwrap();
        let b = run_model_comparison(&cfg(fams, 4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_family_is_rejected_up_front() {
        let bad = cfg(vec![Family::Ws { k: 3, p: 0.1 }], 1);
        assert!(run_model_comparison(&bad).is_err());
    }
}
