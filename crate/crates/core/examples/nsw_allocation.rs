//! Nash social welfare: allocate goods to agents to maximize the product of
//! their utilities, written as a determinant over a partition matroid.
//!
//! cargo run --example nsw_allocation

use detmax::cli::{self, RoundingMethod, SolveOptions};
use detmax::instances;

fn main() -> detmax::Result<()> {
    // utilities[agent][good]
    let utilities = vec![
        vec![4.0, 1.0, 2.0, 0.5, 3.0],
        vec![1.0, 3.0, 0.5, 2.0, 1.0],
        vec![0.5, 1.0, 3.0, 2.5, 0.5],
    ];
    let inst = instances::gen_nsw(&utilities, None)?;
    let report = cli::cmd_solve(
        &inst,
        &SolveOptions {
            rounding: RoundingMethod::Partition,
            ..SolveOptions::default()
        },
    );
    if let Some(e) = &report.error {
        eprintln!("solve failed: {e}");
        std::process::exit(report.exit_code);
    }
    let round = report.round.expect("round stage");
    let d = utilities.len();
    let mut bundles = vec![Vec::new(); d];
    for &e in &round.basis {
        bundles[e % d].push(e / d);
    }
    for (agent, goods) in bundles.iter().enumerate() {
        let value: f64 = goods.iter().map(|&g| utilities[agent][g]).sum();
        println!("agent {agent}: goods {goods:?}, utility {value}");
    }
    let oracle = report.oracle.expect("oracle stage");
    println!("welfare {:.3}, optimum {:.3}", round.objective, oracle.opt);
    Ok(())
}
