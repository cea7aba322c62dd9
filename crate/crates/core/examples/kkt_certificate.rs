//! Checks the stationarity certificate of a relaxation solution, then shows
//! it failing once the inner variable is moved off the optimum.
//!
//! cargo run --example kkt_certificate

use detmax::instances::{self, PerturbationParams};
use detmax::matroid::Matroid;
use detmax::relaxation::{self, CpConfig};

fn main() -> detmax::Result<()> {
    let inst = instances::gen_experimental_design(8, 2, Matroid::uniform(8, 3), 9)?;
    let pre = instances::preprocess(&inst, &PerturbationParams::auto(&inst, 0))?;
    let cp = relaxation::solve_cp(&pre, &CpConfig::default())?;
    let report = relaxation::check_kkt(&pre, &cp.x, &cp.z, 1e-4)?;
    println!("at the solution: certified = {}, sum w = {:.6}", report.is_optimal_certificate, report.sum_w);

    let i = (0..pre.n()).max_by(|&a, &b| cp.x[a].total_cmp(&cp.x[b])).unwrap();
    let mut z = cp.z.clone();
    z[i] += 1.0;
    let moved = relaxation::check_kkt(&pre, &cp.x, &z, 1e-4)?;
    println!("after raising z[{i}]: certified = {}, {:?}", moved.is_optimal_certificate, moved.membership);
    Ok(())
}
