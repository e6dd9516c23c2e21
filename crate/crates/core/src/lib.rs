//! Bounds on the multi-class Bayes error rate (BER) learned from labeled data.
//!
//! The central estimator builds one Euclidean minimum spanning tree over the
//! whole sample, counts the edges joining each pair of classes, and turns
//! those counts into the generalized Henze-Penrose (GHP) overlap matrix
//! `delta^m_ij`. Closed-form upper and lower BER bounds follow from the sum
//! of that matrix. The pairwise Henze-Penrose (one MST per class pair) and
//! Jensen-Shannon bounds are provided as baselines, together with a Monte
//! Carlo oracle for Gaussian mixtures that yields the population values of
//! every quantity.
//!
//! Module map:
//!
//! * [`dataset`], [`rng`], [`report`]: shared types, validation, seeding.
//! * [`geometry`]: exact EMST construction and dichotomous edge counts.
//! * [`estimators`]: FR counts to `delta` matrices.
//! * [`bounds`]: GHP, pairwise and JS bound formulas and tightness checks.
//! * [`oracle`]: Monte Carlo ground truth for spherical Gaussian mixtures.
//! * [`pipeline`]: data in, bound report out.
//! * [`synth`]: circle-of-Gaussians generators with class imbalance.
//! * [`cli`]: the `ber-bounds` command line front end.
//!
//! ```
//! use ber_bounds::{bounds, estimators, synth};
//!
//! let cfg = synth::CircleConfig::uniform(3, 1.0, 0.3, 2);
//! let model = synth::circle_model(&cfg).unwrap();
//! let data = synth::sample(&model, 600, 7).unwrap();
//! let delta = estimators::delta_generalized(&data).unwrap();
//! let report = bounds::ghp_bounds(&delta).unwrap();
//! assert!(report.lower <= report.upper);
//! ```

pub mod bounds;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod estimators;
pub mod geometry;
pub mod oracle;
pub mod pipeline;
pub mod report;
pub mod rng;
pub mod synth;

pub use dataset::{empirical_priors, validate_dataset, LabeledDataset, Points, Priors};
pub use error::{Error, Result};
pub use report::{BoundReport, Method, Source};
