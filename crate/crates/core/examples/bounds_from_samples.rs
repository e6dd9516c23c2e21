//! GHP and pairwise bounds estimated from a synthetic sample, next to the
//! Monte Carlo truth for the same model.
//!
//! cargo run --example bounds_from_samples -- [m] [mu] [n]

use ber_bounds::geometry::MstAlgorithm;
use ber_bounds::oracle::{mc_summary, oracle_bounds};
use ber_bounds::pipeline::{estimate_ghp, estimate_pw};
use ber_bounds::synth::{circle_model, sample, CircleConfig};

fn main() -> ber_bounds::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: f64| args.get(i).and_then(|s| s.parse().ok()).unwrap_or(default);
    let (m, mu, n) = (arg(0, 4.0) as usize, arg(1, 1.0), arg(2, 5000.0) as usize);

    let model = circle_model(&CircleConfig::uniform(m, mu, 0.3, 2))?;
    let data = sample(&model, n, 1)?;
    let ghp = estimate_ghp(&data, MstAlgorithm::Auto)?;
    let pw = estimate_pw(&data, None, MstAlgorithm::Auto)?;

    let truth = mc_summary(&model, 1_000_000, 2)?;
    let oracle = oracle_bounds(&model, &truth)?;

    println!("m={m} mu={mu} sigma2=0.3 n={n}");
    println!("Bayes error (Monte Carlo): {:.4} +- {:.4}", truth.ber.value, truth.ber.std_error);
    println!("              lower    upper");
    println!("GHP estimate  {:.4}   {:.4}", ghp.report.lower, ghp.report.upper);
    println!("GHP oracle    {:.4}   {:.4}", oracle.ghp.lower, oracle.ghp.upper);
    println!("PW estimate   {:.4}   {:.4}", pw.report.lower, pw.report.upper);
    println!("PW oracle     {:.4}   {:.4}", oracle.pw.lower, oracle.pw.upper);
    println!("JS oracle     {:.4}   {:.4}", oracle.js.lower, oracle.js.upper);
    println!("runtime: GHP {:.1} ms, PW {:.1} ms", ghp.report.runtime_ms, pw.report.runtime_ms);
    Ok(())
}
