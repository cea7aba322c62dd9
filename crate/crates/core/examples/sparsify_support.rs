//! Shows how sparsification shrinks the fractional support of the
//! relaxation optimum while keeping its moment matrix.
//!
//! cargo run --example sparsify_support

use detmax::instances::{self, PerturbationParams};
use detmax::matroid::Matroid;
use detmax::relaxation::{self, CpConfig};
use detmax::sparsify::{self, SparsifyConfig};

fn main() -> detmax::Result<()> {
    let inst = instances::gen_experimental_design(12, 2, Matroid::uniform(12, 4), 3)?;
    let pre = instances::preprocess(&inst, &PerturbationParams::auto(&inst, 0))?;
    let cp = relaxation::solve_cp(&pre, &CpConfig::default())?;
    let before = sparsify::count_fractional(&cp.x, 1e-6);
    let sp = sparsify::sparsify(&pre, &cp, &SparsifyConfig::default())?;
    println!("fractional coordinates: {before} -> {} (bound {})", sp.fractional_support.len(), sp.bound);
    println!("f before {:.6}, after {:.6}", sp.f_before, sp.f_after);
    println!("moment matrix residual {:.1e}", sp.matrix_residual);
    match &sp.certificate {
        Some(c) => println!("vertex certified: {} tight rows of rank {}", c.rows.len(), c.rank),
        None => println!("vertex not certified; the basic solution passed the residual check"),
    }
    let ones = sp.x_hat.iter().filter(|v| **v >= 1.0 - 1e-6).count();
    println!("{ones} coordinates at one, {} at fractional values", sp.fractional_support.len());
    Ok(())
}
