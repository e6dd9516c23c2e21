//! Circle-of-Gaussians generators.
//!
//! Class `i` (1-based) has mean `(mu cos(2 pi i/m), mu sin(2 pi i/m), 0, ..., 0)`
//! and covariance `sigma2 I`. Dimensions beyond the first two are pure noise.

use serde::{Deserialize, Serialize};

use crate::dataset::{LabeledDataset, Points, Priors};
use crate::error::{Error, Result};
use crate::oracle::GaussianMixtureModel;
use crate::rng::rng_for;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleConfig {
    pub m: usize,
    /// Circle radius.
    pub mu: f64,
    pub sigma2: f64,
    pub d: usize,
    /// Prior of class 1; `None` for uniform priors.
    pub gamma: Option<f64>,
}

impl CircleConfig {
    pub fn uniform(m: usize, mu: f64, sigma2: f64, d: usize) -> Self {
        CircleConfig { m, mu, sigma2, d, gamma: None }
    }

    pub fn with_gamma(self, gamma: f64) -> Self {
        CircleConfig { gamma: Some(gamma), ..self }
    }

    pub fn priors(&self) -> Result<Priors> {
        match self.gamma {
            Some(g) => imbalanced_priors(g, self.m),
            None => Ok(Priors::uniform(self.m)),
        }
    }
}

pub fn circle_model(config: &CircleConfig) -> Result<GaussianMixtureModel> {
    let CircleConfig { m, mu, sigma2, d, .. } = *config;
    if m < 2 {
        return Err(Error::BadConfig(format!("m must be at least 2, got {m}")));
    }
    if d < 2 {
        return Err(Error::BadConfig(format!("d must be at least 2, got {d}")));
    }
    if !(mu.is_finite() && mu >= 0.0) {
        return Err(Error::BadConfig(format!("radius {mu} must be non-negative")));
    }
    if !(sigma2.is_finite() && sigma2 > 0.0) {
        return Err(Error::BadConfig(format!("variance {sigma2} must be positive")));
    }
    let priors = config.priors().map_err(|e| Error::BadConfig(e.to_string()))?;
    let means = (1..=m)
        .map(|i| {
            let angle = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
            let mut mean = vec![0.0; d];
            mean[0] = mu * angle.cos();
            mean[1] = mu * angle.sin();
            mean
        })
        .collect();
    GaussianMixtureModel::new(priors, means, vec![sigma2; m])
}

/// `p_1 = gamma`, `p_2 = ... = p_m = (1 - gamma)/(m - 1)`.
pub fn imbalanced_priors(gamma: f64, m: usize) -> Result<Priors> {
    if m < 2 {
        return Err(Error::RangeError(format!("m must be at least 2, got {m}")));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::RangeError(format!("gamma {gamma} outside (0, 1)")));
    }
    let rest = (1.0 - gamma) / (m - 1) as f64;
    let mut p = vec![rest; m];
    p[0] = gamma;
    Priors::new(p)
}

/// Draws `n` i.i.d. labeled points (class from the priors, then a Gaussian
/// draw), deterministically from `seed`.
///
/// Fails with [`Error::EmptyClass`] when some class receives no sample.
pub fn sample(model: &GaussianMixtureModel, n: usize, seed: u64) -> Result<LabeledDataset> {
    if n < 2 {
        return Err(Error::DegenerateInput(format!("need at least 2 samples, got {n}")));
    }
    let d = model.dim();
    let mut rng = rng_for(seed, 0);
    let mut data = vec![0.0; n * d];
    let labels: Vec<usize> =
        data.chunks_mut(d).map(|row| model.sample_into(&mut rng, row)).collect();
    LabeledDataset::new(Points::from_flat(data, d)?, labels, model.num_classes())
}
