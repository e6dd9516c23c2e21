//! Oracle bounds for four classes as the circle radius grows.
//!
//! cargo run --example mu_sweep

use ber_bounds::oracle::{mc_summary, oracle_bounds};
use ber_bounds::synth::{circle_model, CircleConfig};

fn main() -> ber_bounds::Result<()> {
    println!("{:>5}  {:>6}  {:>15}  {:>15}  {:>15}", "mu", "BER", "GHP", "PW", "JS");
    for (k, mu) in [0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0].into_iter().enumerate() {
        let model = circle_model(&CircleConfig::uniform(4, mu, 0.3, 2))?;
        let s = mc_summary(&model, 500_000, k as u64)?;
        let b = oracle_bounds(&model, &s)?;
        let fmt = |lo: f64, hi: f64| format!("[{lo:.3}, {hi:.3}]");
        println!(
            "{mu:>5.2}  {:>6.3}  {:>15}  {:>15}  {:>15}",
            s.ber.value,
            fmt(b.ghp.lower, b.ghp.upper),
            fmt(b.pw.lower, b.pw.upper),
            fmt(b.js.lower, b.js.upper)
        );
    }
    Ok(())
}
