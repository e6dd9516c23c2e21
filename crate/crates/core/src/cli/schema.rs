//! JSON and CSV output records. Field order is the serialized key order and
//! is part of the stable format.

use serde::{Deserialize, Serialize};

use crate::bounds::TightnessReport;
use crate::estimators::DeltaMatrix;
use crate::oracle::McEstimate;
use crate::report::{BoundReport, Method, Source};

pub const SCHEMA_VERSION: u32 = 1;

/// Report written by `estimate`, one per method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub schema_version: u32,
    pub method: Method,
    pub source: Source,
    pub m: usize,
    pub n: usize,
    pub priors: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
    pub clamped: bool,
    pub upper_exceeds_one: bool,
    pub delta_matrix: Vec<Vec<f64>>,
    /// Original label of each matrix row/column.
    pub class_labels: Vec<i64>,
    pub runtime_ms: f64,
    pub seed: u64,
    pub warnings: Vec<String>,
}

impl EstimateReport {
    pub fn new(report: &BoundReport, delta: &DeltaMatrix, class_labels: &[i64], seed: u64) -> Self {
        EstimateReport {
            schema_version: SCHEMA_VERSION,
            method: report.method,
            source: report.source,
            m: report.m,
            n: report.n,
            priors: report.priors.clone().unwrap_or_default(),
            lower: report.lower,
            upper: report.upper,
            clamped: report.clamped,
            upper_exceeds_one: report.upper_exceeds_one,
            delta_matrix: delta.rows(),
            class_labels: class_labels.to_vec(),
            runtime_ms: report.runtime_ms,
            seed,
            warnings: report.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixEstimate {
    pub values: Vec<Vec<f64>>,
    pub std_errors: Vec<Vec<f64>>,
}

impl From<&DeltaMatrix> for MatrixEstimate {
    fn from(dm: &DeltaMatrix) -> Self {
        MatrixEstimate {
            values: dm.rows(),
            std_errors: dm.std_error_rows().unwrap_or_else(|| vec![vec![0.0; dm.m]; dm.m]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleBoundsOut {
    pub ghp: BoundReport,
    pub pw: BoundReport,
    pub js: BoundReport,
}

/// Output of `oracle`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub schema_version: u32,
    pub seed: u64,
    pub mc_budget: usize,
    pub m: usize,
    pub d: usize,
    pub priors: Vec<f64>,
    pub ber: McEstimate,
    pub conditional_entropy_bits: McEstimate,
    pub delta_generalized: MatrixEstimate,
    pub delta_pairwise: MatrixEstimate,
    pub sum_delta_generalized: McEstimate,
    pub sum_delta_pairwise: McEstimate,
    pub bounds: OracleBoundsOut,
    pub tightness: TightnessReport,
    pub runtime_ms: f64,
}

/// One CSV row of `sweep`. Estimated columns refer to the trial's sample;
/// `oracle_*` columns to the grid point's model; `mse_*` average the
/// squared errors over all trials of the grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub kind: String,
    pub grid_value: f64,
    pub trial: usize,
    pub seed: u64,
    pub m: usize,
    pub mu: f64,
    pub sigma2: f64,
    pub d: usize,
    pub n: usize,
    pub gamma: Option<f64>,
    pub mc_budget: usize,
    pub oracle_ber: f64,
    pub oracle_ber_se: f64,
    pub oracle_ghp_lower: f64,
    pub oracle_ghp_upper: f64,
    pub oracle_pw_lower: f64,
    pub oracle_pw_upper: f64,
    pub oracle_js_lower: f64,
    pub oracle_js_upper: f64,
    pub oracle_delta_sum: f64,
    pub est_delta_sum: f64,
    pub est_ghp_lower: f64,
    pub est_ghp_upper: f64,
    pub est_pw_lower: f64,
    pub est_pw_upper: f64,
    pub sq_err_delta_sum: f64,
    pub mse_delta_sum: f64,
    pub sq_err_ghp_upper: f64,
    pub mse_ghp_upper: f64,
}

/// Output of `bench`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub m: usize,
    pub n: usize,
    pub gamma: f64,
    pub mu: f64,
    pub sigma2: f64,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub algorithm: String,
    /// Threads used inside the timed sections.
    pub threads: usize,
    pub global_ms: Vec<f64>,
    pub pairwise_ms: Vec<f64>,
    pub global_median_ms: f64,
    pub pairwise_median_ms: f64,
    /// `pairwise - global`, medians.
    pub difference_ms: f64,
    /// `pairwise / global`, medians.
    pub ratio: f64,
    pub oracle_ber: f64,
    pub ghp_upper_median: f64,
    pub pw_upper_median: f64,
    /// Median over trials of `(pw_upper - ber) / (ghp_upper - ber)`;
    /// absent when the GHP gap is not positive.
    pub tightness_ratio: Option<f64>,
}
