//! Closed-form BER bounds.
//!
//! With `S = sum_{i<j} delta^m_ij`:
//!
//! * GHP upper: `2 S`
//! * GHP lower: `((m-1)/m) * (1 - sqrt(1 - 2 m/(m-1) * S))`
//!
//! With `u_ij = 1 - 4 delta_ij / (p_i + p_j)`:
//!
//! * PW upper: `2 sum_{i<j} delta_ij`
//! * PW lower: `(2/m) sum_{i<j} (p_i + p_j) (1/2 - sqrt(u_ij)/2)`
//!
//! With `H = H(p) - JS(f_1..f_m)` in bits (the expected posterior entropy):
//!
//! * JS upper: `H / 2`
//! * JS lower: `H^2 / (4 (m-1))`, equivalently `(H/2)^2 / (m-1)`.

use serde::{Deserialize, Serialize};

use crate::dataset::Priors;
use crate::error::{Error, Result};
use crate::estimators::{u_statistic, DeltaKind, DeltaMatrix};
use crate::report::{BoundReport, Method, Source};

/// Radicands below this (on oracle inputs) indicate a bug, not noise.
pub const RADICAND_ERROR_THRESHOLD: f64 = -1e-3;

/// Slack allowed on `cond_entropy <= log2(m)` before it is an error.
const ENTROPY_SLACK: f64 = 1e-9;

/// GHP bound values for a given `S = sum_{i<j} delta^m_ij`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhpClosedForm {
    pub lower: f64,
    pub upper: f64,
    /// `1 - 2 m/(m-1) S` before clamping.
    pub radicand: f64,
}

/// Unclamped upper bound, lower bound with the radicand floored at zero.
pub fn ghp_closed_form(sum_delta: f64, m: usize) -> GhpClosedForm {
    let mf = m as f64;
    let radicand = 1.0 - 2.0 * mf / (mf - 1.0) * sum_delta;
    let lower = (mf - 1.0) / mf * (1.0 - radicand.clamp(0.0, 1.0).sqrt());
    GhpClosedForm { lower, upper: 2.0 * sum_delta, radicand }
}

/// Inputs to the GHP bounds, with the radicand exposed before clamping.
#[derive(Debug, Clone, PartialEq)]
pub struct GhpInputs {
    pub m: usize,
    pub sum_delta: f64,
    pub radicand: f64,
}

impl GhpInputs {
    pub fn from_delta(delta_m: &DeltaMatrix) -> Result<Self> {
        if delta_m.kind != DeltaKind::Generalized {
            return Err(Error::WrongKind {
                expected: DeltaKind::Generalized.as_str(),
                found: delta_m.kind.as_str(),
            });
        }
        let sum_delta = delta_m.upper_sum();
        let radicand = ghp_closed_form(sum_delta, delta_m.m).radicand;
        Ok(GhpInputs { m: delta_m.m, sum_delta, radicand })
    }
}

/// Generalized HP bounds from a `delta^m` matrix.
///
/// A negative radicand is clamped to zero and flagged. On oracle inputs a
/// radicand below [`RADICAND_ERROR_THRESHOLD`] is an error since Monte Carlo
/// noise cannot explain it; empirical estimates are only flagged.
pub fn ghp_bounds(delta_m: &DeltaMatrix) -> Result<BoundReport> {
    let inputs = GhpInputs::from_delta(delta_m)?;
    let m = inputs.m;
    let mut report = BoundReport::new(Method::Ghp, delta_m.source, m, delta_m.n);

    if inputs.radicand < 0.0 {
        if delta_m.source == Source::Oracle && inputs.radicand < RADICAND_ERROR_THRESHOLD {
            return Err(Error::RangeError(format!(
                "GHP radicand {} below {RADICAND_ERROR_THRESHOLD}",
                inputs.radicand
            )));
        }
        report.clamped = true;
        report.warnings.push(format!("GHP radicand {} clamped to 0", inputs.radicand));
    }
    let closed = ghp_closed_form(inputs.sum_delta, m);
    report.lower = closed.lower;
    report.upper = closed.upper;
    if report.upper > 1.0 {
        report.clamped = true;
        report.upper_exceeds_one = true;
        report.warnings.push(format!("GHP upper bound {} clamped to 1", report.upper));
        report.upper = 1.0;
    }
    if report.lower < 0.0 {
        report.clamped = true;
        report.lower = 0.0;
    }
    if report.lower > report.upper {
        return Err(Error::InvariantBreach(format!(
            "GHP lower {} exceeds upper {}",
            report.lower, report.upper
        )));
    }
    Ok(report)
}

/// Pairwise HP bounds from a `delta` matrix and the class priors.
///
/// The upper bound is not clamped to one; `upper_exceeds_one` marks the
/// trivial case.
pub fn pw_bounds(delta_pw: &DeltaMatrix, priors: &Priors) -> Result<BoundReport> {
    if delta_pw.kind != DeltaKind::PairwiseHp {
        return Err(Error::WrongKind {
            expected: DeltaKind::PairwiseHp.as_str(),
            found: delta_pw.kind.as_str(),
        });
    }
    let m = delta_pw.m;
    if priors.len() != m {
        return Err(Error::PriorMismatch { expected: m, found: priors.len() });
    }
    let p = priors.as_slice();
    let mut report = BoundReport::new(Method::Pw, delta_pw.source, m, delta_pw.n).with_priors(p);

    let mut lower = 0.0;
    for (i, j) in delta_pw.pairs() {
        let (u, clamped) = u_statistic(delta_pw.get(i, j), p[i], p[j]);
        if clamped {
            report.clamped = true;
            report.warnings.push(format!("u statistic for classes ({}, {}) clamped", i + 1, j + 1));
        }
        lower += (p[i] + p[j]) * (0.5 - 0.5 * u.sqrt());
    }
    report.lower = 2.0 / m as f64 * lower;
    report.upper = 2.0 * delta_pw.upper_sum();
    if report.upper > 1.0 {
        report.upper_exceeds_one = true;
        report.warnings.push(format!("PW upper bound {} exceeds 1", report.upper));
    }
    if report.lower > 1.0 {
        report.clamped = true;
        report.lower = 1.0;
    }
    if report.lower > report.upper {
        return Err(Error::InvariantBreach(format!(
            "PW lower {} exceeds upper {}",
            report.lower, report.upper
        )));
    }
    Ok(report)
}

/// Conditional entropy `H(p) - JS(f_1..f_m)` in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JsOracleInputs {
    pub cond_entropy: f64,
    pub m: usize,
}

/// Jensen-Shannon bounds. Only oracle-computed entropies are accepted.
pub fn js_bounds(inputs: JsOracleInputs) -> Result<BoundReport> {
    let m = inputs.m;
    if m < 2 {
        return Err(Error::RangeError(format!("JS bounds need m >= 2, got {m}")));
    }
    let max_h = (m as f64).log2();
    let h = inputs.cond_entropy;
    if !(h >= -ENTROPY_SLACK && h <= max_h + ENTROPY_SLACK) {
        return Err(Error::RangeError(format!("conditional entropy {h} outside [0, {max_h}]")));
    }
    let mut report = BoundReport::new(Method::JsOracle, Source::Oracle, m, 0);
    let clamped_h = h.clamp(0.0, max_h);
    if clamped_h != h {
        report.clamped = true;
    }
    report.upper = clamped_h / 2.0;
    report.lower = clamped_h * clamped_h / (4.0 * (m as f64 - 1.0));
    Ok(report)
}

/// Outcome of the population orderings between GHP, PW and JS bounds.
///
/// JS comparisons are only defined for `m >= 3` and are `None` otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub ghp_upper_le_js_upper: Option<bool>,
    pub ghp_upper_le_pw_upper: bool,
    pub ghp_lower_ge_js_lower: Option<bool>,
    pub ghp_lower_ge_pw_lower: bool,
    pub tolerance: f64,
    /// False when any input was estimated from data: the orderings are
    /// population statements and are then reported, not asserted.
    pub asserted: bool,
}

impl TightnessReport {
    pub fn all_hold(&self) -> bool {
        self.ghp_upper_le_pw_upper
            && self.ghp_lower_ge_pw_lower
            && self.ghp_upper_le_js_upper.unwrap_or(true)
            && self.ghp_lower_ge_js_lower.unwrap_or(true)
    }
}

/// Checks `ghp.upper <= pw.upper`, `ghp.lower >= pw.lower` and, for `m >= 3`,
/// the same against JS, each with slack `tolerance`.
pub fn tightness_report(
    ghp: &BoundReport,
    pw: &BoundReport,
    js: &BoundReport,
    tolerance: f64,
) -> TightnessReport {
    let js_applies = ghp.m >= 3;
    TightnessReport {
        ghp_upper_le_js_upper: js_applies.then_some(ghp.upper <= js.upper + tolerance),
        ghp_upper_le_pw_upper: ghp.upper <= pw.upper + tolerance,
        ghp_lower_ge_js_lower: js_applies.then_some(ghp.lower + tolerance >= js.lower),
        ghp_lower_ge_pw_lower: ghp.lower + tolerance >= pw.lower,
        tolerance,
        asserted: [ghp, pw, js].iter().all(|r| r.source == Source::Oracle),
    }
}
