//! Mean squared error of the single-MST overlap estimate against the Monte
//! Carlo value, as the sample grows.
//!
//! cargo run --example convergence -- [trials]

use ber_bounds::estimators::delta_generalized;
use ber_bounds::oracle::mc_summary;
use ber_bounds::rng::derive_seed;
use ber_bounds::synth::{circle_model, sample, CircleConfig};
use rayon::prelude::*;

fn main() -> ber_bounds::Result<()> {
    let trials: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    let model = circle_model(&CircleConfig::uniform(2, 0.7, 0.1, 2))?;
    let truth = mc_summary(&model, 4_000_000, 0)?.delta_generalized.get(0, 1);
    println!("oracle delta^m_12 = {truth:.5}");
    println!("{:>6}  {:>10}", "n", "MSE");
    for (g, n) in [256usize, 512, 1024, 2048, 4096, 8192].into_iter().enumerate() {
        let sq: Vec<f64> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let ds = sample(&model, n, derive_seed(g as u64, t))?;
                Ok((delta_generalized(&ds)?.get(0, 1) - truth).powi(2))
            })
            .collect::<ber_bounds::Result<_>>()?;
        println!("{n:>6}  {:>10.3e}", sq.iter().sum::<f64>() / trials as f64);
    }
    Ok(())
}
