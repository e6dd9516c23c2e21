use ber_bounds::estimators::{delta_generalized, delta_pairwise};
use ber_bounds::geometry::{build_emst, count_dichotomous_global};
use ber_bounds::oracle::{mc_summary, oracle_bounds, GaussianMixtureModel};
use ber_bounds::pipeline::estimate_ghp;
use ber_bounds::synth::{circle_model, sample, CircleConfig};
use ber_bounds::{LabeledDataset, Points, Priors};
use proptest::prelude::*;

#[test]
fn two_gaussians_match_oracle() {
    let model = GaussianMixtureModel::new(
        Priors::uniform(2),
        vec![vec![0.0, 0.0], vec![2.0, 0.0]],
        vec![0.1, 0.1],
    )
    .unwrap();
    let oracle = mc_summary(&model, 10_000_000, 17).unwrap();
    let est = delta_generalized(&sample(&model, 4000, 3).unwrap()).unwrap();
    let truth = oracle.delta_generalized.get(0, 1);
    assert!((est.get(0, 1) - truth).abs() < 0.01, "{} vs {truth}", est.get(0, 1));
}

#[test]
fn separated_classes_agree_between_estimators() {
    let means = vec![vec![0.0, 0.0], vec![50.0, 0.0], vec![0.0, 50.0]];
    let model =
        GaussianMixtureModel::truncated(Priors::uniform(3), means, vec![1.0; 3], vec![2.0; 3]).unwrap();
    let ds = sample(&model, 900, 5).unwrap();
    let (gen, pw) = (delta_generalized(&ds).unwrap(), delta_pairwise(&ds).unwrap());
    let tol = 1.0 / (2.0 * ds.n() as f64) + 1e-15;
    for (i, j) in gen.pairs() {
        assert!((gen.get(i, j) - pw.get(i, j)).abs() <= tol, "({i},{j})");
    }
}

#[test]
fn overlapping_pairwise_dominates_generalized() {
    let model = circle_model(&CircleConfig::uniform(3, 1.0, 0.3, 2)).unwrap();
    let ds = sample(&model, 3000, 9).unwrap();
    let (gen, pw) = (delta_generalized(&ds).unwrap(), delta_pairwise(&ds).unwrap());
    let slack = 2.0 / (2.0 * ds.n() as f64);
    for (i, j) in gen.pairs() {
        assert!(pw.get(i, j) >= gen.get(i, j) - slack, "({i},{j})");
    }
}

#[test]
fn empirical_ghp_close_to_oracle_bounds() {
    let model = circle_model(&CircleConfig::uniform(4, 1.0, 0.3, 2)).unwrap();
    let oracle = oracle_bounds(&model, &mc_summary(&model, 1_000_000, 2).unwrap()).unwrap();
    let est = estimate_ghp(&sample(&model, 5000, 21).unwrap(), Default::default()).unwrap();
    assert!((est.report.upper - oracle.ghp.upper).abs() < 0.05);
    assert!((est.report.lower - oracle.ghp.lower).abs() < 0.05);
}

#[test]
fn single_class_counts_are_zero() {
    let points = Points::from_rows(&[vec![0.0], vec![1.0], vec![3.0]]).unwrap();
    let emst = build_emst(&points).unwrap();
    let fr = count_dichotomous_global(&emst, &[0, 0, 0], 2).unwrap();
    assert_eq!(fr.upper_sum(), 0);
}

fn dataset_strategy() -> impl Strategy<Value = LabeledDataset> {
    (2usize..5, 6usize..60, 1usize..4).prop_flat_map(|(m, n, d)| {
        (
            prop::collection::vec(prop::collection::vec(-5.0f64..5.0, d), n),
            prop::collection::vec(0..m, n),
        )
            .prop_map(move |(rows, mut labels)| {
                for (k, l) in labels.iter_mut().take(m).enumerate() {
                    *l = k;
                }
                LabeledDataset::new(Points::from_rows(&rows).unwrap(), labels, m).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn entries_in_range(ds in dataset_strategy()) {
        let max = (ds.n() - 1) as f64 / (2.0 * ds.n() as f64);
        for dm in [delta_generalized(&ds).unwrap(), delta_pairwise(&ds).unwrap()] {
            for (i, j) in dm.pairs() {
                prop_assert!((0.0..=max).contains(&dm.get(i, j)));
                prop_assert_eq!(dm.get(i, j), dm.get(j, i));
            }
            for i in 0..dm.m {
                prop_assert_eq!(dm.get(i, i), 0.0);
            }
        }
    }

    #[test]
    fn two_class_estimators_coincide(rows in prop::collection::vec(prop::collection::vec(-5.0f64..5.0, 2), 4..80)) {
        let n = rows.len();
        let labels: Vec<usize> = (0..n).map(|i| (i * 7 / 3) % 2).collect();
        let ds = LabeledDataset::new(Points::from_rows(&rows).unwrap(), labels, 2).unwrap();
        prop_assert_eq!(delta_generalized(&ds).unwrap().upper(), delta_pairwise(&ds).unwrap().upper());
    }
}
