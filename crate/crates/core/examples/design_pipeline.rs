//! Experimental design under a partition matroid: preprocess, solve the
//! relaxation, sparsify, round, and compare with brute force.
//!
//! cargo run --example design_pipeline

use detmax::instances::{self, PerturbationParams};
use detmax::matroid::Matroid;
use detmax::oracle::{self, ChainBound};
use detmax::relaxation::{self, CpConfig};
use detmax::rounding::{self, RoundingInput};
use detmax::sparsify::{self, SparsifyConfig};

fn main() -> detmax::Result<()> {
    // Twelve candidate experiments in R^3, at most one per group of three.
    let groups = vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3];
    let inst = instances::gen_experimental_design(12, 3, Matroid::partition(groups, vec![1; 4]), 42)?;

    let pre = instances::preprocess(&inst, &PerturbationParams::auto(&inst, 1))?;
    let cp = relaxation::solve_cp(&pre, &CpConfig::default())?;
    println!("relaxation: f = {:.4}, exp(f) = {:.4}, {} iterations", cp.f_value, cp.f_value.exp(), cp.iterations.len());

    let sparse = sparsify::sparsify(&pre, &cp, &SparsifyConfig::default())?;
    println!(
        "sparsified: {} fractional coordinates (bound {}), relative value change {:.1e}",
        sparse.fractional_support.len(),
        sparse.bound,
        sparse.value_check
    );

    let input = RoundingInput::new(&pre, &sparse.x_hat, 1e-6)?;
    let rounded = rounding::round_sparse(&input, 7)?;
    let chosen: Vec<usize> = rounded.basis.iter().map(|&e| e / pre.copies()).collect();
    println!("rounded basis {chosen:?} with objective {:.4}", inst.objective(&chosen));

    let expectation = rounding::expected_value_exact(&input)?.expectation;
    let chain = oracle::verify_estimation_chain(&pre, &cp, expectation, ChainBound::General, 1e-2)?;
    println!("OPT = {:.4}, E[det] = {:.4}, chain holds: {}", chain.opt, expectation, chain.all_pass());
    Ok(())
}
