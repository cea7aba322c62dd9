//! Exhaustive optimum of a small instance, read from an instance file if one
//! is given.
//!
//! cargo run --example brute_force [instance.json]

use detmax::cli;
use detmax::instances;
use detmax::matroid::Matroid;
use detmax::oracle;

fn main() -> detmax::Result<()> {
    let inst = match std::env::args_os().nth(1) {
        Some(p) => cli::read_instance(p.as_ref())?,
        None => instances::gen_experimental_design(10, 3, Matroid::uniform(10, 4), 1)?,
    };
    let res = oracle::opt_exact(&inst)?;
    println!("{} bases, optimum {:.6} at {:?}", res.basis_count, res.opt_value, res.opt_basis);
    Ok(())
}
