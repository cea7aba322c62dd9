//! Determinant maximization under matroid constraints.
//!
//! Given vectors `v_1..v_n` in `R^d` and a matroid `M` on `[n]`, the goal is a
//! basis `S` maximizing `det(sum_{i in S} v_i v_i^T)`. The crate solves the
//! saddle-point convex relaxation, sparsifies its optimum to few fractional
//! coordinates, rounds it (randomized, deterministic, or partition sampling)
//! and checks every estimate against exhaustive enumeration on small inputs.
//!
//! Typical pipeline:
//!
//! ```no_run
//! use detmax::{instances, matroid::Matroid, relaxation, sparsify, rounding};
//!
//! let inst = instances::gen_experimental_design(8, 2, Matroid::uniform(8, 3), 7).unwrap();
//! let pre = instances::preprocess(&inst, &instances::PerturbationParams::auto(&inst, 1)).unwrap();
//! let cp = relaxation::solve_cp(&pre, &relaxation::CpConfig::default()).unwrap();
//! let sparse = sparsify::sparsify(&pre, &cp, &sparsify::SparsifyConfig::default()).unwrap();
//! let input = rounding::RoundingInput::new(&pre, &sparse.x_hat, 1e-6).unwrap();
//! let t = rounding::round_sparse(&input, 3).unwrap();
//! println!("{:?} {}", t.basis, t.objective);
//! ```

pub mod cli;
mod colgen;
pub mod error;
pub mod instances;
pub mod matroid;
pub mod numerics;
pub mod oracle;
pub mod relaxation;
pub mod rounding;
pub mod seed;
pub mod sparsify;

pub use error::{Error, Result};

/// Default guard on exhaustive enumerations (bases, size-d independent sets).
pub const DEFAULT_ENUM_LIMIT: usize = 1_000_000;

/// Enumeration guard, overridable through `DETMAX_ENUM_LIMIT`.
pub fn enum_limit() -> usize {
    std::env::var("DETMAX_ENUM_LIMIT")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_LIMIT)
}
