//! Exhaustive ground truth for small instances.

use serde::{Deserialize, Serialize};

use crate::instances::Instance;
use crate::matroid::{self, Matroid};
use crate::numerics;
use crate::relaxation::CpResult;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BruteForceResult {
    pub opt_value: f64,
    pub opt_basis: Vec<usize>,
    pub basis_count: usize,
}

/// All bases in ascending lexicographic order, guarded by [`crate::enum_limit`].
pub fn enumerate_bases(m: &Matroid) -> Result<Vec<Vec<usize>>> {
    matroid::independent_sets_of_size(m, m.full_rank(), crate::enum_limit())
}

/// Best basis by enumeration; ties go to the lexicographically smallest basis.
pub fn opt_exact(inst: &Instance) -> Result<BruteForceResult> {
    let bases = enumerate_bases(&inst.matroid)?;
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for b in &bases {
        let v = inst.objective(b);
        if v > best.0 {
            best = (v, b.clone());
        }
    }
    Ok(BruteForceResult {
        opt_value: best.0.max(0.0),
        opt_basis: best.1,
        basis_count: bases.len(),
    })
}

/// `sum_{S in I_d} det(sum_{i in S} x_i v_i v_i^T)`.
pub fn id_sum(inst: &Instance, x: &[f64]) -> Result<f64> {
    let sets = matroid::independent_sets_of_size(&inst.matroid, inst.d(), crate::enum_limit())?;
    sets.iter()
        .map(|s| numerics::det_of_subset(&inst.vectors, s, x))
        .sum()
}

/// Which approximation constant the chain is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainBound {
    /// `(2 e^5 d)^d`.
    General,
    /// `e^{3d}`, for partition matroids.
    Partition,
}

impl ChainBound {
    pub fn constant(self, d: usize) -> f64 {
        let d = d as f64;
        match self {
            ChainBound::General => (2.0 * 5f64.exp() * d).powf(d),
            ChainBound::Partition => (3.0 * d).exp(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub opt: f64,
    pub exp_f: f64,
    pub expectation: f64,
    pub constant: f64,
    pub opt_le_exp_f: bool,
    pub exp_f_le_c_opt: bool,
    pub expectation_ge_exp_f_over_c: bool,
    pub expectation_le_opt: bool,
}

impl ChainReport {
    pub fn all_pass(&self) -> bool {
        self.opt_le_exp_f && self.exp_f_le_c_opt && self.expectation_ge_exp_f_over_c && self.expectation_le_opt
    }
}

/// `OPT <= e^f`, `e^f <= C OPT`, `E >= e^f / C`, `E <= OPT`, each with relative slack `tol`.
pub fn chain_report(opt: f64, f_value: f64, expectation: f64, d: usize, bound: ChainBound, tol: f64) -> ChainReport {
    let exp_f = f_value.exp();
    let c = bound.constant(d);
    ChainReport {
        opt,
        exp_f,
        expectation,
        constant: c,
        opt_le_exp_f: opt <= exp_f * (1.0 + tol),
        exp_f_le_c_opt: exp_f <= c * opt * (1.0 + tol),
        expectation_ge_exp_f_over_c: expectation >= exp_f / c * (1.0 - tol),
        expectation_le_opt: expectation <= opt * (1.0 + tol),
    }
}

/// [`chain_report`] with `OPT` from enumeration.
pub fn verify_estimation_chain(
    inst: &Instance,
    cp: &CpResult,
    expectation: f64,
    bound: ChainBound,
    tol: f64,
) -> Result<ChainReport> {
    let opt = opt_exact(inst)?.opt_value;
    Ok(chain_report(opt, cp.f_value, expectation, inst.d(), bound, tol))
}
