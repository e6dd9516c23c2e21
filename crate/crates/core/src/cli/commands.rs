use std::time::Instant;

use rayon::prelude::*;

use super::io::{load_model, load_priors, read_csv, write_output};
use super::schema::{
    BenchReport, EstimateReport, MatrixEstimate, OracleBoundsOut, OracleReport, SweepRow,
    SCHEMA_VERSION,
};
use super::{BenchArgs, CliError, EstimateArgs, MethodArg, OracleArgs, SweepArgs, SweepKind};
use crate::dataset::{validate_dataset, LabeledDataset, Priors};
use crate::geometry::MstAlgorithm;
use crate::oracle::{self, GaussianMixtureModel, OracleBounds, OracleSummary};
use crate::pipeline::{estimate_ghp, estimate_pw};
use crate::rng::derive_seed;
use crate::synth::{circle_model, sample, CircleConfig};

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Reorders priors given by ascending label value into dense class order.
fn priors_for(dataset: &LabeledDataset, by_label: Vec<f64>) -> Result<Priors, CliError> {
    let labels = dataset.original_labels();
    if by_label.len() != labels.len() {
        return Err(CliError::Validation(crate::Error::PriorMismatch {
            expected: labels.len(),
            found: by_label.len(),
        }));
    }
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    let dense = labels
        .iter()
        .map(|l| by_label[sorted.binary_search(l).unwrap_or(0)])
        .collect();
    Ok(Priors::new(dense)?)
}

pub fn cmd_estimate(args: &EstimateArgs, timing: bool) -> Result<(), CliError> {
    let raw = read_csv(&args.input)?;
    let dataset = validate_dataset(&raw.rows, &raw.labels)?;
    let priors = match &args.priors {
        Some(path) => Some(priors_for(&dataset, load_priors(path)?)?),
        None => None,
    };
    let algorithm = MstAlgorithm::from(args.algorithm);

    let mut reports = Vec::new();
    if matches!(args.method, MethodArg::Ghp | MethodArg::Both) {
        let mut est = estimate_ghp(&dataset, algorithm)?;
        if let Some(p) = &priors {
            est.report.priors = Some(p.as_slice().to_vec());
        }
        reports.push((est.report, est.delta));
    }
    if matches!(args.method, MethodArg::Pw | MethodArg::Both) {
        let est = estimate_pw(&dataset, priors.as_ref(), algorithm)?;
        reports.push((est.report, est.delta));
    }
    let out: Vec<EstimateReport> = reports
        .iter()
        .map(|(r, d)| {
            let mut rep = EstimateReport::new(r, d, dataset.original_labels(), args.seed);
            if !timing {
                rep.runtime_ms = 0.0;
            }
            rep
        })
        .collect();
    let text = if out.len() == 1 { to_json(&out[0])? } else { to_json(&out)? };
    write_output(args.output.as_deref(), &text)
}

fn oracle_report(
    model: &GaussianMixtureModel,
    summary: &OracleSummary,
    bounds: OracleBounds,
    runtime_ms: f64,
) -> OracleReport {
    OracleReport {
        schema_version: SCHEMA_VERSION,
        seed: summary.seed,
        mc_budget: summary.n_samples,
        m: summary.m,
        d: model.dim(),
        priors: model.priors().as_slice().to_vec(),
        ber: summary.ber,
        conditional_entropy_bits: summary.cond_entropy,
        delta_generalized: MatrixEstimate::from(&summary.delta_generalized),
        delta_pairwise: MatrixEstimate::from(&summary.delta_pairwise),
        sum_delta_generalized: summary.sum_generalized,
        sum_delta_pairwise: summary.sum_pairwise,
        bounds: OracleBoundsOut { ghp: bounds.ghp, pw: bounds.pw, js: bounds.js },
        tightness: bounds.tightness,
        runtime_ms,
    }
}

pub fn cmd_oracle(args: &OracleArgs, timing: bool) -> Result<(), CliError> {
    let model = load_model(&args.model)?;
    if args.mc_budget == 0 {
        return Err(CliError::input("BadArgument", "--mc-budget must be at least 1"));
    }
    let start = Instant::now();
    let summary = oracle::mc_summary(&model, args.mc_budget, args.seed)?;
    let mut bounds = oracle::oracle_bounds(&model, &summary)?;
    let runtime_ms = if timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
    for r in [&mut bounds.ghp, &mut bounds.pw, &mut bounds.js] {
        r.runtime_ms = runtime_ms;
    }
    let report = oracle_report(&model, &summary, bounds, runtime_ms);
    write_output(args.output.as_deref(), &to_json(&report)?)
}

pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let values: Vec<f64> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::input("BadGrid", format!("`{s}` is not a finite number")))
        })
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err(CliError::input("BadGrid", "grid is empty"));
    }
    Ok(values)
}

fn as_count(v: f64, what: &str, min: usize) -> Result<usize, CliError> {
    if v.fract() != 0.0 || v < min as f64 {
        return Err(CliError::input("BadGrid", format!("{what} grid value {v} must be an integer >= {min}")));
    }
    Ok(v as usize)
}

struct GridPoint {
    value: f64,
    config: CircleConfig,
    n: usize,
}

struct TrialResult {
    est_delta_sum: f64,
    est_ghp_lower: f64,
    est_ghp_upper: f64,
    est_pw_lower: f64,
    est_pw_upper: f64,
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let grid = parse_grid(&args.grid)?;
    if args.trials == 0 {
        return Err(CliError::input("BadGrid", "--trials must be at least 1"));
    }
    if args.mc_budget == 0 {
        return Err(CliError::input("BadArgument", "--mc-budget must be at least 1"));
    }
    let base = CircleConfig { m: args.m, mu: args.mu, sigma2: args.sigma2, d: args.d, gamma: args.gamma };
    let points: Vec<GridPoint> = grid
        .iter()
        .map(|&value| {
            Ok(match args.kind {
                SweepKind::Mu => GridPoint { value, config: CircleConfig { mu: value, ..base }, n: args.n },
                SweepKind::M => GridPoint {
                    value,
                    config: CircleConfig { m: as_count(value, "m", 2)?, ..base },
                    n: args.n,
                },
                SweepKind::NConvergence => {
                    GridPoint { value, config: base, n: as_count(value, "n", 2)? }
                }
            })
        })
        .collect::<Result<_, CliError>>()?;
    let kind = match args.kind {
        SweepKind::Mu => "mu",
        SweepKind::M => "m",
        SweepKind::NConvergence => "n-convergence",
    };
    let algorithm = MstAlgorithm::from(args.algorithm);

    let models: Vec<GaussianMixtureModel> = points
        .iter()
        .map(|p| circle_model(&p.config).map_err(|e| CliError::input("BadGrid", e.to_string())))
        .collect::<Result<_, _>>()?;

    let oracles: Vec<(OracleSummary, OracleBounds)> = models
        .par_iter()
        .enumerate()
        .map(|(g, model)| {
            let summary = oracle::mc_summary(model, args.mc_budget, derive_seed(args.seed, 1 << 32 | g as u64))?;
            let bounds = oracle::oracle_bounds(model, &summary)?;
            Ok((summary, bounds))
        })
        .collect::<Result<_, crate::Error>>()?;

    let jobs: Vec<(usize, usize)> =
        (0..points.len()).flat_map(|g| (0..args.trials).map(move |t| (g, t))).collect();
    let trials: Vec<(u64, TrialResult)> = jobs
        .par_iter()
        .map(|&(g, t)| {
            let seed = derive_seed(derive_seed(args.seed, g as u64), t as u64);
            let data = sample(&models[g], points[g].n, seed)?;
            let ghp = estimate_ghp(&data, algorithm)?;
            let pw = estimate_pw(&data, None, algorithm)?;
            Ok((
                seed,
                TrialResult {
                    est_delta_sum: ghp.delta.upper_sum(),
                    est_ghp_lower: ghp.report.lower,
                    est_ghp_upper: ghp.report.upper,
                    est_pw_lower: pw.report.lower,
                    est_pw_upper: pw.report.upper,
                },
            ))
        })
        .collect::<Result<_, crate::Error>>()?;

    let mut wtr = csv::Writer::from_writer(Vec::new());
    for (g, point) in points.iter().enumerate() {
        let (summary, bounds) = &oracles[g];
        let oracle_sum = summary.sum_generalized.value;
        let group = &trials[g * args.trials..(g + 1) * args.trials];
        let sq_delta: Vec<f64> = group.iter().map(|(_, r)| (r.est_delta_sum - oracle_sum).powi(2)).collect();
        let sq_upper: Vec<f64> =
            group.iter().map(|(_, r)| (r.est_ghp_upper - bounds.ghp.upper).powi(2)).collect();
        let mse_delta = sq_delta.iter().sum::<f64>() / group.len() as f64;
        let mse_upper = sq_upper.iter().sum::<f64>() / group.len() as f64;
        for (t, (seed, r)) in group.iter().enumerate() {
            let row = SweepRow {
                kind: kind.to_string(),
                grid_value: point.value,
                trial: t,
                seed: *seed,
                m: point.config.m,
                mu: point.config.mu,
                sigma2: point.config.sigma2,
                d: point.config.d,
                n: point.n,
                gamma: point.config.gamma,
                mc_budget: args.mc_budget,
                oracle_ber: summary.ber.value,
                oracle_ber_se: summary.ber.std_error,
                oracle_ghp_lower: bounds.ghp.lower,
                oracle_ghp_upper: bounds.ghp.upper,
                oracle_pw_lower: bounds.pw.lower,
                oracle_pw_upper: bounds.pw.upper,
                oracle_js_lower: bounds.js.lower,
                oracle_js_upper: bounds.js.upper,
                oracle_delta_sum: oracle_sum,
                est_delta_sum: r.est_delta_sum,
                est_ghp_lower: r.est_ghp_lower,
                est_ghp_upper: r.est_ghp_upper,
                est_pw_lower: r.est_pw_lower,
                est_pw_upper: r.est_pw_upper,
                sq_err_delta_sum: sq_delta[t],
                mse_delta_sum: mse_delta,
                sq_err_ghp_upper: sq_upper[t],
                mse_ghp_upper: mse_upper,
            };
            wtr.serialize(row).map_err(|e| CliError::Internal(e.to_string()))?;
        }
    }
    let bytes = wtr.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    let text = String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))?;
    write_output(args.output.as_deref(), &text)
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

/// Timing comparison of the two estimation pipelines. Each timed section
/// runs on a single-thread pool.
pub fn run_bench(args: &BenchArgs) -> Result<BenchReport, CliError> {
    if args.trials == 0 {
        return Err(CliError::input("BadArgument", "--trials must be at least 1"));
    }
    let config = CircleConfig::uniform(args.m, args.mu, args.sigma2, args.d).with_gamma(args.gamma);
    let model = circle_model(&config).map_err(|e| CliError::input("BadArgument", e.to_string()))?;
    let algorithm = MstAlgorithm::from(args.algorithm);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let ber = oracle::mc_ber(&model, args.mc_budget.max(1), derive_seed(args.seed, u64::MAX))?;

    let mut global_ms = Vec::new();
    let mut pairwise_ms = Vec::new();
    let mut ghp_upper = Vec::new();
    let mut pw_upper = Vec::new();
    let mut ratios = Vec::new();
    for t in 0..args.trials {
        let data = sample(&model, args.n, derive_seed(args.seed, t as u64))?;
        let (ghp, g_ms) = pool.install(|| {
            let start = Instant::now();
            let est = estimate_ghp(&data, algorithm);
            (est, start.elapsed().as_secs_f64() * 1e3)
        });
        let (pw, p_ms) = pool.install(|| {
            let start = Instant::now();
            let est = estimate_pw(&data, None, algorithm);
            (est, start.elapsed().as_secs_f64() * 1e3)
        });
        let (ghp, pw) = (ghp?, pw?);
        global_ms.push(g_ms);
        pairwise_ms.push(p_ms);
        ghp_upper.push(ghp.report.upper);
        pw_upper.push(pw.report.upper);
        let gap = ghp.report.upper - ber.value;
        if gap > 0.0 {
            ratios.push((pw.report.upper - ber.value) / gap);
        }
    }
    let global_median_ms = median(&global_ms);
    let pairwise_median_ms = median(&pairwise_ms);
    Ok(BenchReport {
        schema_version: SCHEMA_VERSION,
        m: args.m,
        n: args.n,
        gamma: args.gamma,
        mu: args.mu,
        sigma2: args.sigma2,
        d: args.d,
        trials: args.trials,
        seed: args.seed,
        algorithm: format!("{:?}", algorithm),
        threads: 1,
        global_ms,
        pairwise_ms,
        global_median_ms,
        pairwise_median_ms,
        difference_ms: pairwise_median_ms - global_median_ms,
        ratio: pairwise_median_ms / global_median_ms,
        oracle_ber: ber.value,
        ghp_upper_median: median(&ghp_upper),
        pw_upper_median: median(&pw_upper),
        tightness_ratio: (ratios.len() == args.trials).then(|| median(&ratios)),
    })
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let report = run_bench(args)?;
    write_output(args.output.as_deref(), &to_json(&report)?)
}
