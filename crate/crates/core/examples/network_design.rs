//! Pick a spanning tree maximizing the weighted tree count of the reduced
//! Laplacian, i.e. the product of its edge weights.
//!
//! cargo run --example network_design

use detmax::cli::{self, RoundingMethod, SolveOptions};
use detmax::instances;

fn main() -> detmax::Result<()> {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 3), (2, 4)];
    let weights = [1.0, 2.0, 0.5, 3.0, 1.5, 2.5, 1.0, 0.8];
    let inst = instances::gen_network_design(5, &edges, &weights, None)?;
    for rounding in [RoundingMethod::Sparse, RoundingMethod::Deterministic] {
        let report = cli::cmd_solve(&inst, &SolveOptions { rounding, ..SolveOptions::default() });
        let Some(round) = report.round else {
            eprintln!("{rounding:?} failed: {:?}", report.error);
            continue;
        };
        let tree: Vec<_> = round.basis.iter().map(|&e| edges[e]).collect();
        let opt = report.oracle.map_or(f64::NAN, |o| o.opt);
        println!("{rounding:?}: tree {tree:?}, weight product {:.3} (optimum {opt:.3})", round.objective);
    }
    Ok(())
}
