//! Euclidean minimum spanning trees and Friedman-Rafsky edge counts.
//!
//! Candidate edges are ordered by `(squared distance, min index, max index)`.
//! That order is strict, so the MST is unique even with duplicate points or
//! equal distances, and every construction path returns the same edge set.
//! Comparisons use squared distances; stored weights are Euclidean.

mod kdtree;
mod prim;

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{LabeledDataset, Points};
use crate::error::{Error, Result};

/// Strict total order on candidate edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct EdgeKey {
    pub d2: f64,
    pub u: usize,
    pub v: usize,
}

impl EdgeKey {
    pub const INFINITE: EdgeKey = EdgeKey { d2: f64::INFINITY, u: usize::MAX, v: usize::MAX };

    #[inline]
    pub fn new(d2: f64, a: usize, b: usize) -> Self {
        if a < b {
            EdgeKey { d2, u: a, v: b }
        } else {
            EdgeKey { d2, u: b, v: a }
        }
    }
}

impl Eq for EdgeKey {}

impl PartialOrd for EdgeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EdgeKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.d2
            .total_cmp(&other.d2)
            .then(self.u.cmp(&other.u))
            .then(self.v.cmp(&other.v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// A spanning tree stored as `n - 1` edges with `u < v`, sorted by the edge
/// order above. `total_weight` is summed in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    n: usize,
    edges: Vec<Edge>,
    total_weight: f64,
}

impl EdgeList {
    fn from_keys(n: usize, mut keys: Vec<EdgeKey>) -> Self {
        keys.sort_unstable();
        let edges: Vec<Edge> =
            keys.iter().map(|k| Edge { u: k.u, v: k.v, weight: k.d2.sqrt() }).collect();
        let total_weight = edges.iter().map(|e| e.weight).sum();
        EdgeList { n, edges, total_weight }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Number of vertices spanned (indices range over `0..n`).
    pub fn num_vertices(&self) -> usize {
        self.n
    }
}

/// MST construction path. Both produce identical edge sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MstAlgorithm {
    /// Dense Prim scan, O(n^2). The reference path.
    Prim,
    /// Borůvka rounds with kd-tree nearest-foreign-neighbour queries.
    KdBoruvka,
    /// Prim for small or high-dimensional inputs, kd-tree Borůvka otherwise.
    #[default]
    Auto,
}

impl MstAlgorithm {
    fn resolve(self, n: usize, d: usize) -> MstAlgorithm {
        match self {
            MstAlgorithm::Auto if n >= 4096 && d <= 8 => MstAlgorithm::KdBoruvka,
            MstAlgorithm::Auto => MstAlgorithm::Prim,
            other => other,
        }
    }
}

/// Exact Euclidean MST of all points, using [`MstAlgorithm::Auto`].
pub fn build_emst(points: &Points) -> Result<EdgeList> {
    build_emst_with(points, MstAlgorithm::Auto)
}

pub fn build_emst_with(points: &Points, algorithm: MstAlgorithm) -> Result<EdgeList> {
    let idx: Vec<usize> = (0..points.len()).collect();
    let keys = emst_keys(points, &idx, algorithm)?;
    Ok(EdgeList::from_keys(points.len(), keys))
}

/// MST over the subset `idx` (ascending); edges carry global indices.
fn emst_keys(points: &Points, idx: &[usize], algorithm: MstAlgorithm) -> Result<Vec<EdgeKey>> {
    if idx.len() < 2 {
        return Err(Error::DegenerateInput(format!(
            "a spanning tree needs at least 2 points, got {}",
            idx.len()
        )));
    }
    Ok(match algorithm.resolve(idx.len(), points.dim()) {
        MstAlgorithm::KdBoruvka => kdtree::kd_boruvka(points, idx),
        _ => prim::prim(points, idx),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrKind {
    Global,
    Pairwise,
}

/// Symmetric `m x m` dichotomous edge counts with zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrMatrix {
    pub kind: FrKind,
    pub m: usize,
    pub n_total: usize,
    pub class_counts: Vec<usize>,
    counts: Vec<u64>,
}

impl FrMatrix {
    fn zeros(kind: FrKind, m: usize, n_total: usize, class_counts: Vec<usize>) -> Self {
        FrMatrix { kind, m, n_total, class_counts, counts: vec![0; m * m] }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.counts[i * self.m + j]
    }

    fn set(&mut self, i: usize, j: usize, value: u64) {
        self.counts[i * self.m + j] = value;
        self.counts[j * self.m + i] = value;
    }

    /// `sum_{i<j} counts[i][j]`.
    pub fn upper_sum(&self) -> u64 {
        (0..self.m).flat_map(|i| ((i + 1)..self.m).map(move |j| (i, j))).map(|(i, j)| self.get(i, j)).sum()
    }
}

/// Counts, for each class pair, the MST edges joining those two classes.
pub fn count_dichotomous_global(emst: &EdgeList, labels: &[usize], m: usize) -> Result<FrMatrix> {
    if labels.len() != emst.num_vertices() {
        return Err(Error::LengthMismatch { expected: emst.num_vertices(), found: labels.len() });
    }
    let mut class_counts = vec![0usize; m];
    for &l in labels {
        if l >= m {
            return Err(Error::RangeError(format!("label {} outside 1..={m}", l + 1)));
        }
        class_counts[l] += 1;
    }
    let mut fr = FrMatrix::zeros(FrKind::Global, m, labels.len(), class_counts);
    for e in emst.edges() {
        let (a, b) = (labels[e.u], labels[e.v]);
        if a != b {
            let c = fr.get(a, b) + 1;
            fr.set(a, b, c);
        }
    }
    Ok(fr)
}

/// One MST per class pair over `X^(i) ∪ X^(j)`; class pairs run in parallel.
pub fn count_dichotomous_pairwise(dataset: &LabeledDataset) -> Result<FrMatrix> {
    count_dichotomous_pairwise_with(dataset, MstAlgorithm::Auto)
}

pub fn count_dichotomous_pairwise_with(
    dataset: &LabeledDataset,
    algorithm: MstAlgorithm,
) -> Result<FrMatrix> {
    let m = dataset.num_classes();
    if let Some(k) = dataset.class_counts().iter().position(|&c| c == 0) {
        return Err(Error::EmptyClass { class: k + 1 });
    }
    let pairs: Vec<(usize, usize)> =
        (0..m).flat_map(|i| ((i + 1)..m).map(move |j| (i, j))).collect();
    let labels = dataset.labels();
    let counts: Vec<u64> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<u64> {
            let idx = dataset.pair_indices(i, j);
            let keys = emst_keys(dataset.points(), &idx, algorithm)?;
            Ok(keys.iter().filter(|k| labels[k.u] != labels[k.v]).count() as u64)
        })
        .collect::<Result<_>>()?;
    let mut fr =
        FrMatrix::zeros(FrKind::Pairwise, m, dataset.n(), dataset.class_counts().to_vec());
    for (&(i, j), &c) in pairs.iter().zip(&counts) {
        fr.set(i, j, c);
    }
    Ok(fr)
}
