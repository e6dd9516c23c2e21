mod common;

use ber_bounds::bounds::{pw_bounds, tightness_report};
use ber_bounds::estimators::u_statistic;
use ber_bounds::oracle::{mc_ber, mc_hp_integrals, mc_summary, oracle_bounds, GaussianMixtureModel};
use ber_bounds::synth::{circle_model, CircleConfig};
use ber_bounds::Priors;
use statrs::distribution::{ContinuousCDF, Normal};

/// `m = 4`, `mu = 1`, `sigma2 = 0.3`, uniform priors, `d = 2`, at `10^7`
/// samples with seed 20240601 (see `regenerate_fixtures`).
mod fixture {
    pub const SEED: u64 = 20240601;
    pub const BER: (f64, f64) = (0.1870255, 0.0000530);
    pub const COND_ENTROPY: (f64, f64) = (0.6809012, 0.0001471);
    pub const SUM_GENERALIZED: (f64, f64) = (0.1329571, 0.0000313);
    pub const SUM_PAIRWISE: (f64, f64) = (0.1686290, 0.0000475);
}

fn four_class_model() -> GaussianMixtureModel {
    circle_model(&CircleConfig::uniform(4, 1.0, 0.3, 2)).unwrap()
}

fn within(value: f64, se: f64, reference: (f64, f64), k: f64) -> bool {
    (value - reference.0).abs() <= k * (se * se + reference.1 * reference.1).sqrt()
}

/// Quadrature of BER, entropy and both overlap sums for a 2-D isotropic
/// mixture on a fine midpoint grid, using densities evaluated directly.
struct Quadrature {
    ber: f64,
    cond_entropy: f64,
    sum_generalized: f64,
    sum_pairwise: f64,
}

fn quadrature_2d(priors: &[f64], means: &[[f64; 2]], sigma2: f64, half_width: f64, h: f64) -> Quadrature {
    let m = priors.len();
    let steps = (2.0 * half_width / h).ceil() as usize;
    let norm = 1.0 / (2.0 * std::f64::consts::PI * sigma2);
    let mut q = Quadrature { ber: 0.0, cond_entropy: 0.0, sum_generalized: 0.0, sum_pairwise: 0.0 };
    let mut joint = vec![0.0; m];
    for ix in 0..steps {
        let x = -half_width + (ix as f64 + 0.5) * h;
        for iy in 0..steps {
            let y = -half_width + (iy as f64 + 0.5) * h;
            for k in 0..m {
                let r2 = (x - means[k][0]).powi(2) + (y - means[k][1]).powi(2);
                joint[k] = priors[k] * norm * (-r2 / (2.0 * sigma2)).exp();
            }
            let f: f64 = joint.iter().sum();
            if f < 1e-300 {
                continue;
            }
            let max = joint.iter().cloned().fold(0.0, f64::max);
            q.ber += f - max;
            for k in 0..m {
                if joint[k] > 0.0 {
                    q.cond_entropy -= joint[k] * (joint[k] / f).log2();
                }
                for l in (k + 1)..m {
                    q.sum_generalized += joint[k] * joint[l] / f;
                    q.sum_pairwise += joint[k] * joint[l] / (joint[k] + joint[l]);
                }
            }
        }
    }
    let area = h * h;
    q.ber *= area;
    q.cond_entropy *= area;
    q.sum_generalized *= area;
    q.sum_pairwise *= area;
    q
}

fn four_class_quadrature() -> Quadrature {
    let means = [[0.0, 1.0], [-1.0, 0.0], [0.0, -1.0], [1.0, 0.0]];
    quadrature_2d(&[0.25; 4], &means, 0.3, 7.0, 0.004)
}

#[test]
#[ignore = "regenerates the 10^7-sample fixture; run with --ignored --nocapture"]
fn regenerate_fixtures() {
    let s = mc_summary(&four_class_model(), 10_000_000, fixture::SEED).unwrap();
    println!("BER: ({:.7}, {:.7})", s.ber.value, s.ber.std_error);
    println!("COND_ENTROPY: ({:.7}, {:.7})", s.cond_entropy.value, s.cond_entropy.std_error);
    println!("SUM_GENERALIZED: ({:.7}, {:.7})", s.sum_generalized.value, s.sum_generalized.std_error);
    println!("SUM_PAIRWISE: ({:.7}, {:.7})", s.sum_pairwise.value, s.sum_pairwise.std_error);
    let q = four_class_quadrature();
    println!("quadrature: ber {} h {} gen {} pw {}", q.ber, q.cond_entropy, q.sum_generalized, q.sum_pairwise);
}

#[test]
fn fixture_agrees_with_quadrature() {
    let q = four_class_quadrature();
    assert!(within(q.ber, 0.0, fixture::BER, 3.0), "{}", q.ber);
    assert!(within(q.cond_entropy, 0.0, fixture::COND_ENTROPY, 3.0), "{}", q.cond_entropy);
    assert!(within(q.sum_generalized, 0.0, fixture::SUM_GENERALIZED, 3.0), "{}", q.sum_generalized);
    assert!(within(q.sum_pairwise, 0.0, fixture::SUM_PAIRWISE, 3.0), "{}", q.sum_pairwise);
}

#[test]
fn fresh_run_agrees_with_fixture() {
    let s = mc_summary(&four_class_model(), 1_000_000, 99).unwrap();
    assert!(within(s.ber.value, s.ber.std_error, fixture::BER, 3.0));
    assert!(within(s.cond_entropy.value, s.cond_entropy.std_error, fixture::COND_ENTROPY, 3.0));
    assert!(within(s.sum_generalized.value, s.sum_generalized.std_error, fixture::SUM_GENERALIZED, 3.0));
    assert!(within(s.sum_pairwise.value, s.sum_pairwise.std_error, fixture::SUM_PAIRWISE, 3.0));
}

#[test]
fn fixture_bounds_bracket_and_order() {
    let model = four_class_model();
    let s = mc_summary(&model, 1_000_000, 5).unwrap();
    let b = oracle_bounds(&model, &s).unwrap();
    let ber = fixture::BER.0;
    assert!(b.ghp.lower <= ber && ber <= b.ghp.upper, "{} {} {}", b.ghp.lower, ber, b.ghp.upper);
    assert!(b.js.lower <= ber && ber <= b.js.upper);
    assert!(b.tightness.asserted);
    assert!(b.tightness.all_hold(), "{:?}", b.tightness);
}

#[test]
fn two_class_closed_form() {
    let normal = Normal::new(0.0, 1.0).unwrap();
    for (sep, s2, seed) in [(1.0, 0.25, 1u64), (2.0, 1.0, 2), (0.5, 0.1, 3), (3.0, 0.5, 4)] {
        let model = GaussianMixtureModel::new(
            Priors::uniform(2),
            vec![vec![0.0, 0.0, 0.0], vec![sep, 0.0, 0.0]],
            vec![s2; 2],
        )
        .unwrap();
        let est = mc_ber(&model, 400_000, seed).unwrap();
        let exact = normal.cdf(-sep / (2.0 * s2.sqrt()));
        assert!((est.value - exact).abs() <= 3.0 * est.std_error, "sep={sep}: {} vs {exact}", est.value);
    }
}

#[test]
fn std_error_halves_when_budget_quadruples() {
    let model = four_class_model();
    for seed in 0..4 {
        let small = mc_ber(&model, 100_000, seed).unwrap();
        let large = mc_ber(&model, 400_000, seed + 100).unwrap();
        let ratio = large.std_error / small.std_error;
        assert!((ratio - 0.5).abs() <= 0.1, "ratio {ratio}");
    }
}

#[test]
fn pairwise_overlap_dominates_generalized() {
    let model = circle_model(&CircleConfig::uniform(3, 1.0, 0.3, 2)).unwrap();
    let s = mc_summary(&model, 500_000, 8).unwrap();
    for (i, j) in s.delta_pairwise.pairs() {
        let (pw, gen) = (s.delta_pairwise.get(i, j), s.delta_generalized.get(i, j));
        let se = s.delta_pairwise.std_error(i, j).unwrap().hypot(s.delta_generalized.std_error(i, j).unwrap());
        assert!(pw + 3.0 * se >= gen);
        assert!(pw > gen);
    }
    assert!(2.0 * s.sum_generalized.value <= 1.0);
}

#[test]
fn hp_divergence_in_unit_interval() {
    let configs = [
        CircleConfig::uniform(3, 0.5, 0.3, 2),
        CircleConfig::uniform(4, 2.0, 0.1, 3),
        CircleConfig::uniform(5, 1.0, 0.3, 2).with_gamma(0.6),
        CircleConfig::uniform(2, 0.0, 1.0, 2),
    ];
    for (c, cfg) in configs.iter().enumerate() {
        let model = circle_model(cfg).unwrap();
        let p = model.priors().as_slice().to_vec();
        let (hp, ghp) = mc_hp_integrals(&model, 0, 1, 200_000, c as u64).unwrap();
        let d = 1.0 - (p[0] + p[1]) * hp.value;
        let slack = 3.0 * (p[0] + p[1]) * hp.std_error + 1e-12;
        assert!((-slack..=1.0 + slack).contains(&d), "{cfg:?}: D = {d}");
        assert!(hp.value + 3.0 * hp.std_error.hypot(ghp.std_error) >= ghp.value);
    }
}

#[test]
fn u_identity_reproduces_pairwise_lower_bound() {
    let model = circle_model(&CircleConfig::uniform(4, 0.8, 0.3, 2).with_gamma(0.4)).unwrap();
    let s = mc_summary(&model, 200_000, 3).unwrap();
    let p = model.priors().as_slice();
    let m = 4.0;
    let mut lower = 0.0;
    for (i, j) in s.delta_pairwise.pairs() {
        let delta = s.delta_pairwise.get(i, j);
        let (u, clamped) = u_statistic(delta, p[i], p[j]);
        assert!(!clamped);
        // delta = (p_i + p_j)/4 (1 - u)
        assert!(((p[i] + p[j]) / 4.0 * (1.0 - u) - delta).abs() < 1e-15);
        lower += 2.0 / m * (p[i] + p[j]) * (0.5 - 0.5 * u.sqrt());
    }
    let report = pw_bounds(&s.delta_pairwise, model.priors()).unwrap();
    assert!((report.lower - lower).abs() < 1e-14, "{} vs {lower}", report.lower);
}

#[test]
fn posterior_matches_direct_density_ratio() {
    let priors = [0.2, 0.5, 0.3];
    let means = vec![vec![0.0, 0.0, 1.0], vec![1.5, -0.5, 0.0], vec![-1.0, 2.0, 0.5]];
    let s2 = [0.4, 1.1, 0.7];
    let model = GaussianMixtureModel::new(Priors::new(priors.to_vec()).unwrap(), means.clone(), s2.to_vec()).unwrap();
    let points = [[0.0, 0.0, 0.0], [1.0, 1.0, 1.0], [-2.0, 3.0, 0.2], [4.0, -3.0, 1.0], [0.3, 0.1, -0.7]];
    for x in points {
        let joint: Vec<f64> = (0..3)
            .map(|k| {
                let r2 = common::sq_dist(&x, &means[k]);
                priors[k] * (2.0 * std::f64::consts::PI * s2[k]).powf(-1.5) * (-r2 / (2.0 * s2[k])).exp()
            })
            .collect();
        let total: f64 = joint.iter().sum();
        let a = model.posterior(&x);
        for k in 0..3 {
            assert!((a[k] - joint[k] / total).abs() < 1e-13, "x={x:?} k={k}");
        }
        assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn m2_orderings_collapse_to_equality() {
    let model = circle_model(&CircleConfig::uniform(2, 0.7, 0.2, 2)).unwrap();
    let s = mc_summary(&model, 200_000, 4).unwrap();
    let b = oracle_bounds(&model, &s).unwrap();
    assert_eq!(b.ghp.lower.to_bits(), b.pw.lower.to_bits());
    assert!((b.ghp.upper - b.pw.upper).abs() < 1e-15);
    let t = tightness_report(&b.ghp, &b.pw, &b.js, 0.0);
    assert_eq!(t.ghp_upper_le_js_upper, None);
    assert!(t.all_hold());
}

#[test]
fn gap_to_pairwise_upper_grows_with_m() {
    let gap = |m: usize| {
        let model = circle_model(&CircleConfig::uniform(m, 1.0, 0.3, 2)).unwrap();
        let s = mc_summary(&model, 200_000, m as u64).unwrap();
        let b = oracle_bounds(&model, &s).unwrap();
        assert!(b.tightness.all_hold(), "m={m}: {:?}", b.tightness);
        b.pw.upper - b.ghp.upper
    };
    assert!(gap(10) > gap(4));
}

#[test]
fn identical_components_give_uniform_bounds() {
    let model = circle_model(&CircleConfig::uniform(3, 0.0, 0.5, 2)).unwrap();
    let s = mc_summary(&model, 10_000, 1).unwrap();
    let b = oracle_bounds(&model, &s).unwrap();
    assert!((s.ber.value - 2.0 / 3.0).abs() < 1e-12);
    assert!((b.ghp.upper - 2.0 / 3.0).abs() < 1e-12);
    assert!((b.ghp.lower - 2.0 / 3.0).abs() < 1e-12);
}
