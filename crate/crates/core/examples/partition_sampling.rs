//! Samples bases of a partition matroid with probability proportional to
//! x^T and compares empirical frequencies with the exact distribution.
//!
//! cargo run --example partition_sampling

use std::collections::HashMap;

use detmax::instances;
use detmax::matroid::Matroid;
use detmax::rounding;

fn main() -> detmax::Result<()> {
    let m = Matroid::partition(vec![0, 0, 0, 1, 1, 1, 1], vec![1, 2]);
    let inst = instances::gen_experimental_design(7, 2, m, 11)?;
    let x = [0.2, 0.5, 0.3, 0.9, 0.4, 0.3, 0.4];

    let exact = rounding::partition_distribution_direct(&inst, &x)?;
    let samples = 50_000;
    let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
    for seed in 0..samples {
        *counts.entry(rounding::round_partition(&inst, &x, seed)?.basis).or_default() += 1;
    }
    println!("{:<12} {:>9} {:>9}", "basis", "exact", "sampled");
    for (basis, p) in &exact {
        let f = counts.get(basis).copied().unwrap_or(0) as f64 / samples as f64;
        println!("{:<12} {p:>9.4} {f:>9.4}", format!("{basis:?}"));
    }
    println!("E[det] = {:.4}", rounding::partition_expected_value(&inst, &x)?);
    Ok(())
}
