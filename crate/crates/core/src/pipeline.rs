//! End-to-end estimators: labeled data in, bound report out.

use std::time::Instant;

use crate::bounds;
use crate::dataset::{empirical_priors, LabeledDataset, Priors};
use crate::error::Result;
use crate::estimators::{self, DeltaMatrix};
use crate::geometry::MstAlgorithm;
use crate::report::BoundReport;

/// A bound report together with the `delta` matrix it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub delta: DeltaMatrix,
    pub report: BoundReport,
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Single global MST, generalized FR counts, GHP bounds.
pub fn estimate_ghp(dataset: &LabeledDataset, algorithm: MstAlgorithm) -> Result<Estimate> {
    let start = Instant::now();
    let delta = estimators::delta_generalized_with(dataset, algorithm)?;
    let report = bounds::ghp_bounds(&delta)?
        .with_priors(empirical_priors(dataset).as_slice())
        .with_runtime_ms(elapsed_ms(start));
    Ok(Estimate { delta, report })
}

/// One MST per class pair, pairwise FR counts, PW bounds. Uses the empirical
/// priors unless `priors` is given.
pub fn estimate_pw(
    dataset: &LabeledDataset,
    priors: Option<&Priors>,
    algorithm: MstAlgorithm,
) -> Result<Estimate> {
    let start = Instant::now();
    let delta = estimators::delta_pairwise_with(dataset, algorithm)?;
    let empirical;
    let priors = match priors {
        Some(p) => p,
        None => {
            empirical = empirical_priors(dataset);
            &empirical
        }
    };
    let report = bounds::pw_bounds(&delta, priors)?.with_runtime_ms(elapsed_ms(start));
    Ok(Estimate { delta, report })
}
