//! Derandomized rounding for d = 2: drop one fractional element at a time,
//! re-solving the relaxation on what is left.
//!
//! cargo run --example deterministic_rounding

use detmax::instances;
use detmax::matroid::Matroid;
use detmax::oracle;
use detmax::rounding::{self, DeterministicConfig};

fn main() -> detmax::Result<()> {
    let groups = vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 2];
    let inst = instances::gen_experimental_design(10, 2, Matroid::partition(groups, vec![1, 1, 2]), 5)?;
    let res = rounding::round_deterministic(&inst, &DeterministicConfig::default())?;
    println!("start: {} supported elements, relaxation value {:.4}", res.initial_support.len(), res.initial_value);
    for step in &res.steps {
        println!(
            "  drop {:>2}: value {:.4} ({} candidates, retention ok: {})",
            step.removed, step.value, step.candidates, step.beta_ok
        );
    }
    let opt = oracle::opt_exact(&inst)?;
    println!("basis {:?}: {:.4} vs optimum {:.4}", res.rounded.basis, res.rounded.objective, opt.opt_value);
    Ok(())
}
