//! Labeled CSV in, JSON bound report out: the path the `estimate` command
//! takes, driven from library code.
//!
//! cargo run --example csv_pipeline -- [path.csv]

use std::fmt::Write as _;

use ber_bounds::cli::io::read_csv;
use ber_bounds::cli::schema::EstimateReport;
use ber_bounds::geometry::MstAlgorithm;
use ber_bounds::pipeline::estimate_ghp;
use ber_bounds::synth::{circle_model, sample, CircleConfig};
use ber_bounds::validate_dataset;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = match std::env::args().nth(1) {
        Some(p) => std::path::PathBuf::from(p),
        None => {
            // No input given: write a small demo file first.
            let ds = sample(&circle_model(&CircleConfig::uniform(3, 1.0, 0.3, 2))?, 900, 3)?;
            let mut text = String::from("f1,f2,label\n");
            for (i, label) in ds.labels_one_based().iter().enumerate() {
                let x = ds.points().row(i);
                writeln!(text, "{},{},{}", x[0], x[1], label)?;
            }
            let path = std::env::temp_dir().join("ber_bounds_demo.csv");
            std::fs::write(&path, text)?;
            eprintln!("wrote {}", path.display());
            path
        }
    };

    let raw = read_csv(&path).map_err(|e| e.to_json_line())?;
    let dataset = validate_dataset(&raw.rows, &raw.labels)?;
    let est = estimate_ghp(&dataset, MstAlgorithm::Auto)?;
    let report = EstimateReport::new(&est.report, &est.delta, dataset.original_labels(), 0);
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
