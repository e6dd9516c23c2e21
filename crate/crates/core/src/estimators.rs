//! Friedman-Rafsky counts to `delta` matrices.
//!
//! Both estimators divide the count for a class pair by `2n`, `n` being the
//! total sample size:
//!
//! * generalized: `R^(ij) / 2n -> delta^m_ij`, where `R^(ij)` counts edges
//!   between classes `i` and `j` in one MST over all classes.
//! * pairwise: `R_ij / 2n -> delta_ij`, where `R_ij` counts dichotomous edges
//!   in the MST of `X^(i) ∪ X^(j)` alone. The two-sample FR limit gives
//!   `R_ij / (n_i + n_j) -> 2 delta_ij / (p_i + p_j)`, and `(n_i + n_j) / n`
//!   estimates `p_i + p_j`, so the same `1 / 2n` normalization applies.
//!
//! Finite-sample estimates may violate population relations such as
//! `delta_ij >= delta^m_ij`; they are returned as computed.

use serde::{Deserialize, Serialize};

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::geometry::{self, FrMatrix, MstAlgorithm};
use crate::report::Source;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaKind {
    /// `delta^m_ij = ∫ p_i p_j f_i f_j / f^(m)`.
    Generalized,
    /// `delta_ij = ∫ p_i p_j f_i f_j / (p_i f_i + p_j f_j)`.
    PairwiseHp,
}

impl DeltaKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DeltaKind::Generalized => "Generalized",
            DeltaKind::PairwiseHp => "PairwiseHP",
        }
    }
}

/// Symmetric `m x m` matrix of non-negative overlaps with zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaMatrix {
    pub kind: DeltaKind,
    pub source: Source,
    pub m: usize,
    /// Sample size (empirical) or Monte Carlo budget (oracle).
    pub n: usize,
    values: Vec<f64>,
    std_errors: Option<Vec<f64>>,
}

impl DeltaMatrix {
    /// Builds a matrix from its strict upper triangle, given row by row
    /// (`(0,1), (0,2), ..., (m-2,m-1)`).
    pub fn from_upper(
        kind: DeltaKind,
        source: Source,
        m: usize,
        n: usize,
        upper: &[f64],
    ) -> Result<Self> {
        let expected = m * m.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::LengthMismatch { expected, found: upper.len() });
        }
        if let Some(v) = upper.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::RangeError(format!("delta entry {v} is not a non-negative number")));
        }
        let mut values = vec![0.0; m * m];
        let mut it = upper.iter();
        for i in 0..m {
            for j in (i + 1)..m {
                let v = *it.next().unwrap_or(&0.0);
                values[i * m + j] = v;
                values[j * m + i] = v;
            }
        }
        Ok(DeltaMatrix { kind, source, m, n, values, std_errors: None })
    }

    pub(crate) fn with_std_errors_upper(mut self, upper: &[f64]) -> Self {
        let m = self.m;
        let mut se = vec![0.0; m * m];
        let mut it = upper.iter();
        for i in 0..m {
            for j in (i + 1)..m {
                let v = *it.next().unwrap_or(&0.0);
                se[i * m + j] = v;
                se[j * m + i] = v;
            }
        }
        self.std_errors = Some(se);
        self
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.m + j]
    }

    pub fn std_error(&self, i: usize, j: usize) -> Option<f64> {
        self.std_errors.as_ref().map(|se| se[i * self.m + j])
    }

    /// Row-major `m x m` values.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.values.chunks(self.m).map(<[f64]>::to_vec).collect()
    }

    pub fn std_error_rows(&self) -> Option<Vec<Vec<f64>>> {
        self.std_errors.as_ref().map(|se| se.chunks(self.m).map(<[f64]>::to_vec).collect())
    }

    /// Strict upper triangle in row order.
    pub fn upper(&self) -> Vec<f64> {
        self.pairs().map(|(i, j)| self.get(i, j)).collect()
    }

    /// `sum_{i<j} delta_ij`.
    pub fn upper_sum(&self) -> f64 {
        self.pairs().map(|(i, j)| self.get(i, j)).sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let m = self.m;
        (0..m).flat_map(move |i| ((i + 1)..m).map(move |j| (i, j)))
    }
}

fn from_counts(fr: &FrMatrix, kind: DeltaKind) -> Result<DeltaMatrix> {
    let two_n = 2.0 * fr.n_total as f64;
    let m = fr.m;
    let upper: Vec<f64> = (0..m)
        .flat_map(|i| ((i + 1)..m).map(move |j| (i, j)))
        .map(|(i, j)| fr.get(i, j) as f64 / two_n)
        .collect();
    DeltaMatrix::from_upper(kind, Source::Empirical, m, fr.n_total, &upper)
}

/// `delta^m_ij ≈ R^(ij) / 2n` from a single global MST.
pub fn delta_generalized(dataset: &LabeledDataset) -> Result<DeltaMatrix> {
    delta_generalized_with(dataset, MstAlgorithm::Auto)
}

pub fn delta_generalized_with(
    dataset: &LabeledDataset,
    algorithm: MstAlgorithm,
) -> Result<DeltaMatrix> {
    let emst = geometry::build_emst_with(dataset.points(), algorithm)?;
    let fr = geometry::count_dichotomous_global(&emst, dataset.labels(), dataset.num_classes())?;
    from_counts(&fr, DeltaKind::Generalized)
}

/// `delta_ij ≈ R_ij / 2n` from one MST per class pair.
pub fn delta_pairwise(dataset: &LabeledDataset) -> Result<DeltaMatrix> {
    delta_pairwise_with(dataset, MstAlgorithm::Auto)
}

pub fn delta_pairwise_with(
    dataset: &LabeledDataset,
    algorithm: MstAlgorithm,
) -> Result<DeltaMatrix> {
    let fr = geometry::count_dichotomous_pairwise_with(dataset, algorithm)?;
    from_counts(&fr, DeltaKind::PairwiseHp)
}

/// `u = 1 - 4 delta_ij / (p_i + p_j)`, projected into `[0, 1]`.
///
/// Returns `(u, clamped)`.
pub fn u_statistic(delta_ij: f64, p_i: f64, p_j: f64) -> (f64, bool) {
    let u = 1.0 - 4.0 * delta_ij / (p_i + p_j);
    if u < 0.0 {
        (0.0, true)
    } else if u > 1.0 {
        (1.0, true)
    } else {
        (u, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::validate_dataset;

    fn chain() -> LabeledDataset {
        let raw: Vec<Vec<f64>> = (0..4).map(|i| vec![i as f64]).collect();
        validate_dataset(&raw, &[1, 2, 1, 2]).unwrap()
    }

    #[test]
    fn chain_delta() {
        let dm = delta_generalized(&chain()).unwrap();
        assert_eq!(dm.get(0, 1), 3.0 / 8.0);
        assert_eq!(dm.kind, DeltaKind::Generalized);
        assert_eq!(dm.source, Source::Empirical);
    }

    #[test]
    fn two_classes_pairwise_matches_generalized() {
        let dg = delta_generalized(&chain()).unwrap();
        let dp = delta_pairwise(&chain()).unwrap();
        assert_eq!(dg.upper(), dp.upper());
    }

    #[test]
    fn well_separated_classes_give_zero() {
        let raw: Vec<Vec<f64>> = (0..6).map(|i| vec![if i < 3 { i as f64 } else { 100.0 + i as f64 }]).collect();
        let ds = validate_dataset(&raw, &[1, 1, 1, 2, 2, 2]).unwrap();
        let dm = delta_generalized(&ds).unwrap();
        // Only the bridge edge is dichotomous.
        assert_eq!(dm.get(0, 1), 1.0 / 12.0);
    }

    #[test]
    fn u_statistic_examples() {
        assert_eq!(u_statistic(0.0, 0.3, 0.2), (1.0, false));
        assert_eq!(u_statistic(0.25, 0.5, 0.5), (0.0, false));
        assert_eq!(u_statistic(0.26, 0.5, 0.5), (0.0, true));
    }

    #[test]
    fn from_upper_layout() {
        let dm = DeltaMatrix::from_upper(DeltaKind::PairwiseHp, Source::Oracle, 3, 0, &[0.1, 0.2, 0.3])
            .unwrap();
        assert_eq!(dm.rows(), vec![vec![0.0, 0.1, 0.2], vec![0.1, 0.0, 0.3], vec![0.2, 0.3, 0.0]]);
        assert!((dm.upper_sum() - 0.6).abs() < 1e-15);
        assert!(DeltaMatrix::from_upper(DeltaKind::PairwiseHp, Source::Oracle, 3, 0, &[0.1]).is_err());
        assert!(DeltaMatrix::from_upper(DeltaKind::PairwiseHp, Source::Oracle, 2, 0, &[-0.1]).is_err());
    }
}
