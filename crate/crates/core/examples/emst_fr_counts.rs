//! Build a Euclidean MST and count the edges joining different classes.
//!
//! cargo run --example emst_fr_counts

use ber_bounds::geometry::{build_emst, count_dichotomous_global, count_dichotomous_pairwise};
use ber_bounds::{LabeledDataset, Points};

fn main() -> ber_bounds::Result<()> {
    // Two interleaved rows of points, three classes.
    let rows: Vec<Vec<f64>> = (0..12).map(|i| vec![(i / 2) as f64, (i % 2) as f64 * 1.5]).collect();
    let labels: Vec<usize> = (0..12).map(|i| (i / 2) % 3).collect();
    let points = Points::from_rows(&rows)?;

    let emst = build_emst(&points)?;
    println!("MST over {} points, total length {:.3}", emst.num_vertices(), emst.total_weight());
    for e in emst.edges() {
        println!("  {:>2} - {:<2} {:.3}  classes {} / {}", e.u, e.v, e.weight, labels[e.u] + 1, labels[e.v] + 1);
    }

    let global = count_dichotomous_global(&emst, &labels, 3)?;
    let dataset = LabeledDataset::new(points, labels, 3)?;
    let pairwise = count_dichotomous_pairwise(&dataset)?;
    println!("pair   global  pairwise");
    for i in 0..3 {
        for j in (i + 1)..3 {
            println!("{}-{}    {:>6}  {:>8}", i + 1, j + 1, global.get(i, j), pairwise.get(i, j));
        }
    }
    Ok(())
}
