//! Monte Carlo ground truth for a Gaussian mixture: Bayes error, overlap
//! matrices, conditional entropy, all three bounds and their orderings.
//!
//! cargo run --example oracle_truth

use ber_bounds::oracle::{mc_hp_integrals, mc_summary, oracle_bounds, GaussianMixtureModel};
use ber_bounds::Priors;

fn main() -> ber_bounds::Result<()> {
    let model = GaussianMixtureModel::new(
        Priors::new(vec![0.5, 0.3, 0.2])?,
        vec![vec![0.0, 0.0], vec![1.2, 0.0], vec![0.4, 1.0]],
        vec![0.3, 0.5, 0.4],
    )?;
    let s = mc_summary(&model, 2_000_000, 7)?;
    println!("BER            {:.5} +- {:.5}", s.ber.value, s.ber.std_error);
    println!("H(Y|X) [bits]  {:.5} +- {:.5}", s.cond_entropy.value, s.cond_entropy.std_error);
    for (i, j) in s.delta_generalized.pairs() {
        println!(
            "pair {}-{}: delta^m {:.5}  delta {:.5}",
            i + 1,
            j + 1,
            s.delta_generalized.get(i, j),
            s.delta_pairwise.get(i, j)
        );
    }
    let (hp, ghp) = mc_hp_integrals(&model, 0, 1, 500_000, 8)?;
    println!("HP(1,2) {:.4}  GHP(1,2) {:.4}", hp.value, ghp.value);

    let b = oracle_bounds(&model, &s)?;
    for r in [&b.ghp, &b.pw, &b.js] {
        println!("{:<10} [{:.4}, {:.4}]", r.method.as_str(), r.lower, r.upper);
    }
    println!("orderings hold: {} (tolerance {:.1e})", b.tightness.all_hold(), b.tightness.tolerance);
    Ok(())
}
