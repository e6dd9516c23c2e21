//! Labeled samples and class priors.
//!
//! Classes are stored densely as `0..m` internally. User-facing labels are
//! kept in [`LabeledDataset::original_labels`], indexed by dense class.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major `n x d` matrix of feature vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Points {
    data: Vec<f64>,
    n: usize,
    d: usize,
}

impl Points {
    /// Wraps a row-major buffer. Fails if the buffer length is not `n * d`.
    pub fn from_flat(data: Vec<f64>, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::DegenerateInput("dimension must be at least 1".into()));
        }
        if !data.len().is_multiple_of(d) {
            return Err(Error::LengthMismatch {
                expected: (data.len() / d + 1) * d,
                found: data.len(),
            });
        }
        let n = data.len() / d;
        Ok(Points { data, n, d })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map(Vec::len).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * d);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != d {
                return Err(Error::DimensionMismatch { row, expected: d, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Points::from_flat(data, d)
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    /// Copy with every coordinate multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Points {
        Points { data: self.data.iter().map(|v| v * c).collect(), n: self.n, d: self.d }
    }

    /// Squared Euclidean distance between rows `i` and `j`.
    #[inline]
    pub fn sq_dist(&self, i: usize, j: usize) -> f64 {
        sq_dist(self.row(i), self.row(j))
    }
}

#[inline]
pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// A validated labeled sample: `n >= 2` finite points in `R^d` with labels in
/// `0..m`, `m >= 2`, every class non-empty.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    points: Points,
    labels: Vec<usize>,
    m: usize,
    class_counts: Vec<usize>,
    original_labels: Vec<i64>,
}

impl LabeledDataset {
    /// Builds a dataset from dense labels `0..m`. Used by generators that
    /// already know the class count; a class without samples is an error.
    pub fn new(points: Points, labels: Vec<usize>, m: usize) -> Result<Self> {
        check_points(&points)?;
        if labels.len() != points.len() {
            return Err(Error::LengthMismatch { expected: points.len(), found: labels.len() });
        }
        if m < 2 {
            return Err(Error::EmptyClass { class: 2 });
        }
        let mut class_counts = vec![0usize; m];
        for &l in &labels {
            if l >= m {
                return Err(Error::RangeError(format!("label {} outside 1..={m}", l + 1)));
            }
            class_counts[l] += 1;
        }
        if let Some(k) = class_counts.iter().position(|&c| c == 0) {
            return Err(Error::EmptyClass { class: k + 1 });
        }
        let original_labels = (1..=m as i64).collect();
        Ok(LabeledDataset { points, labels, m, class_counts, original_labels })
    }

    pub fn points(&self) -> &Points {
        &self.points
    }

    /// Dense class index (`0..m`) of every point.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn d(&self) -> usize {
        self.points.dim()
    }

    pub fn num_classes(&self) -> usize {
        self.m
    }

    pub fn class_counts(&self) -> &[usize] {
        &self.class_counts
    }

    /// User label of each dense class, in order of first appearance.
    pub fn original_labels(&self) -> &[i64] {
        &self.original_labels
    }

    /// Indices of the points of classes `i` or `j`, ascending.
    pub fn pair_indices(&self, i: usize, j: usize) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == i || l == j)
            .map(|(idx, _)| idx)
            .collect()
    }

    /// Labels as 1-based integers, the form accepted by [`validate_dataset`].
    pub fn labels_one_based(&self) -> Vec<i64> {
        self.labels.iter().map(|&l| l as i64 + 1).collect()
    }
}

fn check_points(points: &Points) -> Result<()> {
    if points.len() < 2 {
        return Err(Error::DegenerateInput(format!("need at least 2 points, got {}", points.len())));
    }
    for i in 0..points.len() {
        if let Some(col) = points.row(i).iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteFeature { row: i, col });
        }
    }
    Ok(())
}

/// Validates raw rows and labels and re-indexes labels densely in order of
/// first appearance (`[3, 3, 5]` becomes classes `[0, 0, 1]`).
pub fn validate_dataset(raw_points: &[Vec<f64>], raw_labels: &[i64]) -> Result<LabeledDataset> {
    if raw_points.is_empty() || raw_labels.is_empty() {
        return Err(Error::DegenerateInput("empty input".into()));
    }
    if raw_points.len() != raw_labels.len() {
        return Err(Error::LengthMismatch { expected: raw_points.len(), found: raw_labels.len() });
    }
    let points = Points::from_rows(raw_points)?;

    let mut original_labels: Vec<i64> = Vec::new();
    let mut labels = Vec::with_capacity(raw_labels.len());
    for &raw in raw_labels {
        let dense = match original_labels.iter().position(|&o| o == raw) {
            Some(k) => k,
            None => {
                original_labels.push(raw);
                original_labels.len() - 1
            }
        };
        labels.push(dense);
    }
    let m = original_labels.len();
    let mut ds = LabeledDataset::new(points, labels, m.max(2))?;
    ds.original_labels = original_labels;
    Ok(ds)
}

/// Class probabilities, each in `(0, 1]`, summing to one within `1e-12`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Priors(Vec<f64>);

impl Priors {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::RangeError("priors must be non-empty".into()));
        }
        if let Some(bad) = p.iter().find(|&&v| !(v > 0.0 && v <= 1.0)) {
            return Err(Error::RangeError(format!("prior {bad} outside (0, 1]")));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::RangeError(format!("priors sum to {total}, not 1")));
        }
        Ok(Priors(p))
    }

    pub fn uniform(m: usize) -> Self {
        Priors(vec![1.0 / m as f64; m])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for Priors {
    type Error = Error;

    fn try_from(value: Vec<f64>) -> Result<Self> {
        Priors::new(value)
    }
}

impl From<Priors> for Vec<f64> {
    fn from(value: Priors) -> Self {
        value.0
    }
}

/// `p_k = n_k / n`.
pub fn empirical_priors(dataset: &LabeledDataset) -> Priors {
    let n = dataset.n() as f64;
    Priors(dataset.class_counts().iter().map(|&c| c as f64 / n).collect())
}
