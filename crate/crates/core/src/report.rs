use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "GHP")]
    Ghp,
    #[serde(rename = "PW")]
    Pw,
    #[serde(rename = "JS-oracle")]
    JsOracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Ghp => "GHP",
            Method::Pw => "PW",
            Method::JsOracle => "JS-oracle",
        }
    }
}

/// Whether a quantity was estimated from a finite labeled sample or computed
/// from a known model by Monte Carlo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Empirical,
    Oracle,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Empirical => "empirical",
            Source::Oracle => "oracle",
        }
    }
}

/// Lower and upper BER bounds produced by one method, with diagnostics.
///
/// `clamped` is set whenever an intermediate quantity (radicand, `u`
/// statistic, final bound) left its theoretical range and was projected
/// back. The pairwise upper bound is deliberately left unclamped and
/// `upper_exceeds_one` records when it is trivial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub method: Method,
    pub source: Source,
    pub lower: f64,
    pub upper: f64,
    pub m: usize,
    /// Sample size for empirical reports, Monte Carlo budget for oracle ones.
    pub n: usize,
    pub priors: Option<Vec<f64>>,
    pub clamped: bool,
    pub upper_exceeds_one: bool,
    pub seed: Option<u64>,
    pub runtime_ms: f64,
    /// Standard errors of `(lower, upper)` when computed by Monte Carlo.
    pub std_errors: Option<[f64; 2]>,
    pub warnings: Vec<String>,
}

impl BoundReport {
    pub(crate) fn new(method: Method, source: Source, m: usize, n: usize) -> Self {
        BoundReport {
            method,
            source,
            lower: 0.0,
            upper: 0.0,
            m,
            n,
            priors: None,
            clamped: false,
            upper_exceeds_one: false,
            seed: None,
            runtime_ms: 0.0,
            std_errors: None,
            warnings: Vec::new(),
        }
    }

    pub fn with_priors(mut self, priors: &[f64]) -> Self {
        self.priors = Some(priors.to_vec());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_runtime_ms(mut self, ms: f64) -> Self {
        self.runtime_ms = ms;
        self
    }

    pub fn lower_se(&self) -> f64 {
        self.std_errors.map_or(0.0, |s| s[0])
    }

    pub fn upper_se(&self) -> f64 {
        self.std_errors.map_or(0.0, |s| s[1])
    }
}
