//! Monte Carlo ground truth for spherical Gaussian mixtures.
//!
//! Every population quantity is an expectation over `X ~ f^(m)` of a function
//! of the posterior vector `a_k = p(k|x)`:
//!
//! | quantity | integrand |
//! |---|---|
//! | BER | `1 - max_k a_k` |
//! | `delta^m_ij` | `a_i a_j` |
//! | `delta_ij` | `a_i a_j / (a_i + a_j)` (0 when both vanish) |
//! | `H(p) - JS` | `-sum_k a_k log2 a_k` |
//!
//! Samples are drawn by picking a component from the priors and then a
//! Gaussian draw. The budget is cut into fixed chunks of [`CHUNK_SIZE`]
//! samples, chunk `c` using ChaCha8 substream `c` of the seed, and chunk
//! statistics are merged in chunk order, so results do not depend on the
//! number of worker threads.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::bounds::{self, ghp_closed_form, JsOracleInputs, TightnessReport};
use crate::dataset::Priors;
use crate::error::{Error, Result};
use crate::estimators::{DeltaKind, DeltaMatrix};
use crate::report::{BoundReport, Source};
use crate::rng::rng_for;

pub const CHUNK_SIZE: usize = 1 << 14;

/// Mixture of isotropic Gaussians `N(mu_k, sigma2_k I)`.
///
/// Components may optionally be truncated to the ball of radius `r_k`
/// around their mean (and renormalized), which gives models with disjoint
/// class supports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelSpec", into = "ModelSpec")]
pub struct GaussianMixtureModel {
    priors: Priors,
    means: Vec<Vec<f64>>,
    sigma2: Vec<f64>,
    truncation: Option<Vec<f64>>,
    log_norm: Vec<f64>,
}

/// Serialized form of a [`GaussianMixtureModel`]: the model file schema.
///
/// ```toml
/// d = 2
/// priors = [0.5, 0.5]
/// means = [[-1.0, 0.0], [1.0, 0.0]]
/// sigma2 = [0.3, 0.3]
/// # optional: truncate each component to a ball of this radius
/// # truncation = [1.0, 1.0]
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub priors: Vec<f64>,
    pub means: Vec<Vec<f64>>,
    pub sigma2: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<Vec<f64>>,
}

impl TryFrom<ModelSpec> for GaussianMixtureModel {
    type Error = Error;

    fn try_from(spec: ModelSpec) -> Result<Self> {
        if let (Some(d), Some(mu)) = (spec.d, spec.means.first()) {
            if mu.len() != d {
                return Err(Error::BadConfig(format!("d = {d} but means have {} coordinates", mu.len())));
            }
        }
        let priors = Priors::new(spec.priors)?;
        Self::build(priors, spec.means, spec.sigma2, spec.truncation)
    }
}

impl From<GaussianMixtureModel> for ModelSpec {
    fn from(model: GaussianMixtureModel) -> Self {
        ModelSpec {
            d: Some(model.dim()),
            priors: model.priors.as_slice().to_vec(),
            means: model.means,
            sigma2: model.sigma2,
            truncation: model.truncation,
        }
    }
}

impl GaussianMixtureModel {
    pub fn new(priors: Priors, means: Vec<Vec<f64>>, sigma2: Vec<f64>) -> Result<Self> {
        Self::build(priors, means, sigma2, None)
    }

    /// Components truncated to balls of the given radii around their means.
    pub fn truncated(
        priors: Priors,
        means: Vec<Vec<f64>>,
        sigma2: Vec<f64>,
        radii: Vec<f64>,
    ) -> Result<Self> {
        Self::build(priors, means, sigma2, Some(radii))
    }

    fn build(
        priors: Priors,
        means: Vec<Vec<f64>>,
        sigma2: Vec<f64>,
        truncation: Option<Vec<f64>>,
    ) -> Result<Self> {
        let m = priors.len();
        if m < 2 {
            return Err(Error::BadConfig(format!("need at least 2 components, got {m}")));
        }
        if means.len() != m || sigma2.len() != m {
            return Err(Error::BadConfig(format!(
                "{m} priors but {} means and {} variances",
                means.len(),
                sigma2.len()
            )));
        }
        let d = means[0].len();
        if d == 0 || means.iter().any(|mu| mu.len() != d) {
            return Err(Error::BadConfig("means must share a dimension >= 1".into()));
        }
        if means.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::BadConfig("means must be finite".into()));
        }
        if let Some(s) = sigma2.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::BadConfig(format!("variance {s} must be positive")));
        }
        if let Some(r) = &truncation {
            if r.len() != m || r.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
                return Err(Error::BadConfig("need one positive truncation radius per class".into()));
            }
        }
        let mut model = GaussianMixtureModel { priors, means, sigma2, truncation, log_norm: vec![] };
        model.log_norm = model.compute_log_norm()?;
        Ok(model)
    }

    fn compute_log_norm(&self) -> Result<Vec<f64>> {
        let d = self.dim() as f64;
        (0..self.num_classes())
            .map(|k| {
                let s2 = self.sigma2[k];
                let mut c = -0.5 * d * (2.0 * std::f64::consts::PI * s2).ln();
                if let Some(r) = &self.truncation {
                    let chi = ChiSquared::new(d).map_err(|e| Error::BadConfig(e.to_string()))?;
                    c -= chi.cdf(r[k] * r[k] / s2).ln();
                }
                Ok(c)
            })
            .collect()
    }

    pub fn num_classes(&self) -> usize {
        self.priors.len()
    }

    pub fn dim(&self) -> usize {
        self.means[0].len()
    }

    pub fn priors(&self) -> &Priors {
        &self.priors
    }

    pub fn means(&self) -> &[Vec<f64>] {
        &self.means
    }

    pub fn sigma2(&self) -> &[f64] {
        &self.sigma2
    }

    pub fn truncation(&self) -> Option<&[f64]> {
        self.truncation.as_deref()
    }

    /// `log(p_k f_k(x))`, `-inf` outside a truncated support.
    fn log_joint(&self, k: usize, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().zip(&self.means[k]).map(|(a, b)| (a - b) * (a - b)).sum();
        if let Some(r) = &self.truncation {
            if r2 > r[k] * r[k] {
                return f64::NEG_INFINITY;
            }
        }
        self.priors.as_slice()[k].ln() + self.log_norm[k] - r2 / (2.0 * self.sigma2[k])
    }

    /// Writes `p(k|x)` into `out`. Points outside every support get the
    /// priors.
    pub fn posterior_into(&self, x: &[f64], out: &mut [f64]) {
        let m = self.num_classes();
        let mut max = f64::NEG_INFINITY;
        for (k, o) in out.iter_mut().enumerate().take(m) {
            *o = self.log_joint(k, x);
            max = max.max(*o);
        }
        if max == f64::NEG_INFINITY {
            out.copy_from_slice(self.priors.as_slice());
            return;
        }
        let mut total = 0.0;
        for o in out.iter_mut() {
            *o = (*o - max).exp();
            total += *o;
        }
        for o in out.iter_mut() {
            *o /= total;
        }
    }

    pub fn posterior(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.num_classes()];
        self.posterior_into(x, &mut out);
        out
    }

    /// Draws a class from the priors, then a point from that component.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, x: &mut [f64]) -> usize {
        let u: f64 = rng.random();
        let p = self.priors.as_slice();
        let mut acc = 0.0;
        let mut k = p.len() - 1;
        for (i, &pi) in p.iter().enumerate() {
            acc += pi;
            if u < acc {
                k = i;
                break;
            }
        }
        let sigma = self.sigma2[k].sqrt();
        loop {
            let mut r2 = 0.0;
            for (xi, mu) in x.iter_mut().zip(&self.means[k]) {
                let z: f64 = rng.sample(StandardNormal);
                *xi = mu + sigma * z;
                r2 += sigma * sigma * z * z;
            }
            match &self.truncation {
                Some(r) if r2 > r[k] * r[k] => continue,
                _ => return k,
            }
        }
    }
}

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    #[inline]
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(&mut self, other: &Moments) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        self.mean += delta * other.n as f64 / n as f64;
        self.m2 += other.m2 + delta * delta * self.n as f64 * other.n as f64 / n as f64;
        self.n = n;
    }

    fn std_error(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        (self.m2.max(0.0) / (self.n - 1) as f64 / self.n as f64).sqrt()
    }

    fn estimate(&self, seed: u64) -> McEstimate {
        McEstimate { value: self.mean, std_error: self.std_error(), n_samples: self.n as usize, seed }
    }
}

/// `-sum a_k log2 a_k` with `0 log 0 = 0`.
fn entropy_bits(a: &[f64]) -> f64 {
    -a.iter().filter(|&&v| v > 0.0).map(|&v| v * v.log2()).sum::<f64>()
}

/// All oracle quantities from one Monte Carlo pass.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSummary {
    pub m: usize,
    pub n_samples: usize,
    pub seed: u64,
    pub ber: McEstimate,
    pub cond_entropy: McEstimate,
    pub delta_generalized: DeltaMatrix,
    pub delta_pairwise: DeltaMatrix,
    /// `sum_{i<j} delta^m_ij`, with its own standard error.
    pub sum_generalized: McEstimate,
    /// `sum_{i<j} delta_ij`.
    pub sum_pairwise: McEstimate,
}

// Layout of the per-sample statistic vector.
const BER: usize = 0;
const ENTROPY: usize = 1;
const SUM_GEN: usize = 2;
const SUM_PW: usize = 3;
const PAIRS: usize = 4;

fn chunk_moments(model: &GaussianMixtureModel, seed: u64, chunk: usize, count: usize) -> Vec<Moments> {
    let m = model.num_classes();
    let n_pairs = m * (m - 1) / 2;
    let mut stats = vec![Moments::default(); PAIRS + 2 * n_pairs];
    let mut rng = rng_for(seed, chunk as u64);
    let mut x = vec![0.0; model.dim()];
    let mut a = vec![0.0; m];
    for _ in 0..count {
        model.sample_into(&mut rng, &mut x);
        model.posterior_into(&x, &mut a);
        let max = a.iter().cloned().fold(0.0, f64::max);
        stats[BER].push(1.0 - max);
        stats[ENTROPY].push(entropy_bits(&a));
        let (mut sg, mut sp) = (0.0, 0.0);
        let mut slot = PAIRS;
        for i in 0..m {
            for j in (i + 1)..m {
                let prod = a[i] * a[j];
                let s = a[i] + a[j];
                let hp = if s > 0.0 { prod / s } else { 0.0 };
                stats[slot].push(prod);
                stats[slot + n_pairs].push(hp);
                sg += prod;
                sp += hp;
                slot += 1;
            }
        }
        stats[SUM_GEN].push(sg);
        stats[SUM_PW].push(sp);
    }
    stats
}

/// One Monte Carlo pass over `n_samples` draws from the mixture.
pub fn mc_summary(model: &GaussianMixtureModel, n_samples: usize, seed: u64) -> Result<OracleSummary> {
    if n_samples == 0 {
        return Err(Error::RangeError("Monte Carlo budget must be at least 1".into()));
    }
    let m = model.num_classes();
    let n_pairs = m * (m - 1) / 2;
    let n_chunks = n_samples.div_ceil(CHUNK_SIZE);
    let per_chunk: Vec<Vec<Moments>> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK_SIZE.min(n_samples - c * CHUNK_SIZE);
            chunk_moments(model, seed, c, count)
        })
        .collect();
    let mut stats = vec![Moments::default(); PAIRS + 2 * n_pairs];
    for chunk in &per_chunk {
        for (acc, s) in stats.iter_mut().zip(chunk) {
            acc.merge(s);
        }
    }

    let gen_vals: Vec<f64> = stats[PAIRS..PAIRS + n_pairs].iter().map(|s| s.mean).collect();
    let gen_se: Vec<f64> = stats[PAIRS..PAIRS + n_pairs].iter().map(Moments::std_error).collect();
    let pw_vals: Vec<f64> = stats[PAIRS + n_pairs..].iter().map(|s| s.mean).collect();
    let pw_se: Vec<f64> = stats[PAIRS + n_pairs..].iter().map(Moments::std_error).collect();
    let delta_generalized =
        DeltaMatrix::from_upper(DeltaKind::Generalized, Source::Oracle, m, n_samples, &gen_vals)?
            .with_std_errors_upper(&gen_se);
    let delta_pairwise =
        DeltaMatrix::from_upper(DeltaKind::PairwiseHp, Source::Oracle, m, n_samples, &pw_vals)?
            .with_std_errors_upper(&pw_se);

    Ok(OracleSummary {
        m,
        n_samples,
        seed,
        ber: stats[BER].estimate(seed),
        cond_entropy: stats[ENTROPY].estimate(seed),
        delta_generalized,
        delta_pairwise,
        sum_generalized: stats[SUM_GEN].estimate(seed),
        sum_pairwise: stats[SUM_PW].estimate(seed),
    })
}

/// `E[1 - max_k p(k|X)]`.
pub fn mc_ber(model: &GaussianMixtureModel, n_samples: usize, seed: u64) -> Result<McEstimate> {
    Ok(mc_summary(model, n_samples, seed)?.ber)
}

/// Oracle `(delta^m, delta)` matrices with per-entry standard errors.
pub fn mc_deltas(
    model: &GaussianMixtureModel,
    n_samples: usize,
    seed: u64,
) -> Result<(DeltaMatrix, DeltaMatrix)> {
    let s = mc_summary(model, n_samples, seed)?;
    Ok((s.delta_generalized, s.delta_pairwise))
}

/// `H(p) - JS(f_1..f_m) = E[-sum_k p(k|X) log2 p(k|X)]`, in bits.
pub fn mc_conditional_entropy(
    model: &GaussianMixtureModel,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    Ok(mc_summary(model, n_samples, seed)?.cond_entropy)
}

/// HP and GHP integrals for classes `i`, `j` (0-based), obtained as
/// `delta_ij / (p_i p_j)` and `delta^m_ij / (p_i p_j)`.
pub fn mc_hp_integrals(
    model: &GaussianMixtureModel,
    i: usize,
    j: usize,
    n_samples: usize,
    seed: u64,
) -> Result<(McEstimate, McEstimate)> {
    let m = model.num_classes();
    if i == j || i >= m || j >= m {
        return Err(Error::RangeError(format!("invalid class pair ({}, {})", i + 1, j + 1)));
    }
    let s = mc_summary(model, n_samples, seed)?;
    let p = model.priors().as_slice();
    let scale = 1.0 / (p[i] * p[j]);
    let est = |dm: &DeltaMatrix| McEstimate {
        value: dm.get(i, j) * scale,
        std_error: dm.std_error(i, j).unwrap_or(0.0) * scale,
        n_samples,
        seed,
    };
    Ok((est(&s.delta_pairwise), est(&s.delta_generalized)))
}

/// GHP, PW and JS bounds evaluated on oracle quantities, with standard
/// errors propagated by finite differences, and the tightness orderings
/// checked at three combined standard errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleBounds {
    pub ghp: BoundReport,
    pub pw: BoundReport,
    pub js: BoundReport,
    pub tightness: TightnessReport,
}

/// Half-width of `f` over `[x - se, x + se]` (clipped below at zero).
fn propagate(f: impl Fn(f64) -> f64, x: f64, se: f64) -> f64 {
    ((f(x + se) - f((x - se).max(0.0))) / 2.0).abs()
}

pub fn oracle_bounds(model: &GaussianMixtureModel, summary: &OracleSummary) -> Result<OracleBounds> {
    let m = summary.m;
    let priors = model.priors();
    let p = priors.as_slice();

    let mut ghp = bounds::ghp_bounds(&summary.delta_generalized)?
        .with_priors(p)
        .with_seed(summary.seed);
    let s_gen = summary.sum_generalized;
    ghp.std_errors = Some([
        propagate(|s| ghp_closed_form(s, m).lower, s_gen.value, s_gen.std_error),
        2.0 * s_gen.std_error,
    ]);

    let mut pw = bounds::pw_bounds(&summary.delta_pairwise, priors)?.with_seed(summary.seed);
    let dp = &summary.delta_pairwise;
    let pw_lower_se: f64 = dp
        .pairs()
        .map(|(i, j)| {
            let term = |d: f64| {
                let (u, _) = crate::estimators::u_statistic(d, p[i], p[j]);
                2.0 / m as f64 * (p[i] + p[j]) * (0.5 - 0.5 * u.sqrt())
            };
            propagate(term, dp.get(i, j), dp.std_error(i, j).unwrap_or(0.0))
        })
        .sum();
    pw.std_errors = Some([pw_lower_se, 2.0 * summary.sum_pairwise.std_error]);

    let h = summary.cond_entropy;
    let mut js = bounds::js_bounds(JsOracleInputs { cond_entropy: h.value, m })?
        .with_priors(p)
        .with_seed(summary.seed);
    js.n = summary.n_samples;
    js.std_errors = Some([
        propagate(|v| v * v / (4.0 * (m as f64 - 1.0)), h.value, h.std_error),
        h.std_error / 2.0,
    ]);

    let combined = |a: f64, b: f64| (a * a + b * b).sqrt();
    let mut worst = combined(ghp.upper_se(), pw.upper_se()).max(combined(ghp.lower_se(), pw.lower_se()));
    if m >= 3 {
        worst = worst
            .max(combined(ghp.upper_se(), js.upper_se()))
            .max(combined(ghp.lower_se(), js.lower_se()));
    }
    let tightness = bounds::tightness_report(&ghp, &pw, &js, 3.0 * worst);
    Ok(OracleBounds { ghp, pw, js, tightness })
}
