//! Wall time of the global-MST and pairwise pipelines as class 1 takes a
//! larger share of the sample.
//!
//! cargo run --release --example imbalance_runtime -- [m] [n]

use ber_bounds::cli::{run_bench, AlgorithmArg, BenchArgs};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let m = args.first().copied().unwrap_or(10);
    let n = args.get(1).copied().unwrap_or(5000);
    println!("m={m} n={n}, single-threaded, median of 3 trials");
    println!("{:>6}  {:>10}  {:>10}  {:>7}  {:>10}", "gamma", "global ms", "pairw. ms", "ratio", "tightness");
    for gamma in [1.0 / m as f64, 0.2, 0.4, 0.6, 0.8] {
        let bench = BenchArgs {
            m,
            n,
            gamma,
            trials: 3,
            seed: 0,
            mu: 1.0,
            sigma2: 0.3,
            d: 2,
            mc_budget: 200_000,
            algorithm: AlgorithmArg::Prim,
            output: None,
        };
        match run_bench(&bench) {
            Ok(r) => println!(
                "{gamma:>6.3}  {:>10.1}  {:>10.1}  {:>7.2}  {:>10}",
                r.global_median_ms,
                r.pairwise_median_ms,
                r.ratio,
                r.tightness_ratio.map_or("-".into(), |t| format!("{t:.1}"))
            ),
            Err(e) => eprintln!("{}", e.to_json_line()),
        }
    }
}
