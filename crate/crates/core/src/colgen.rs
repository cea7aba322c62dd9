//! Column generation for equality-form LPs whose columns come from a
//! pricing oracle (here: matroid bases found greedily).
//!
//! The restricted master is solved with the HiGHS simplex solver, which
//! returns a basic solution together with row duals. Feasibility is
//! enforced with penalized artificial variables.

use highs::{ColProblem, HighsModelStatus, Model, Sense, SolvedModel};

use crate::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct Column {
    pub cost: f64,
    pub entries: Vec<(usize, f64)>,
}

pub(crate) type Pricer<'a> = Box<dyn Fn(&[f64]) -> Result<Vec<(Vec<usize>, Column)>> + 'a>;

pub(crate) struct Family<'a> {
    pub columns: Vec<(Vec<usize>, Column)>,
    pub price: Pricer<'a>,
}

pub(crate) struct Master<'a> {
    pub rhs: Vec<f64>,
    /// Non-negative variables that are always present.
    pub fixed: Vec<Column>,
    pub families: Vec<Family<'a>>,
}

pub(crate) struct MasterSolution {
    pub fixed: Vec<f64>,
    /// Per family: key and value of every column with a positive value.
    pub families: Vec<Vec<(Vec<usize>, f64)>>,
    /// Row duals of the final restricted master.
    pub duals: Vec<f64>,
    pub rounds: usize,
}

const MAX_ROUNDS: usize = 2000;
/// Residual infeasibility tolerated in the master. The right-hand sides
/// inherit the accuracy of the relaxation solve; callers re-check the
/// returned point against the exact constraints.
const ARTIFICIAL_TOL: f64 = 1e-7;

impl<'a> Master<'a> {
    /// Solves to optimality, retrying with a larger penalty on the
    /// artificial variables if they stay positive.
    pub fn solve(&mut self) -> Result<MasterSolution> {
        let mut penalty = 1e4;
        for _ in 0..3 {
            let (sol, artificial) = self.solve_with_penalty(penalty)?;
            if artificial <= ARTIFICIAL_TOL {
                return Ok(sol);
            }
            penalty *= 100.0;
        }
        Err(Error::Sparsification("LP is infeasible for the frozen tight sets".into()))
    }

    fn solve_with_penalty(&mut self, penalty: f64) -> Result<(MasterSolution, f64)> {
        let rows = self.rhs.len();
        for round in 0..MAX_ROUNDS {
            let mut p = ColProblem::new();
            let handles: Vec<_> = self.rhs.iter().map(|&b| p.add_row(b..=b)).collect();
            let add = |p: &mut ColProblem, col: &Column| {
                let factors: Vec<_> = col.entries.iter().map(|&(r, a)| (handles[r], a)).collect();
                p.add_column(col.cost, 0.0.., factors);
            };
            for c in &self.fixed {
                add(&mut p, c);
            }
            for f in &self.families {
                for (_, c) in &f.columns {
                    add(&mut p, c);
                }
            }
            for r in 0..rows {
                for sign in [1.0, -1.0] {
                    p.add_column(penalty, 0.0.., [(handles[r], sign)]);
                }
            }
            let solved = solve_lp(p)?;
            let sol = solved.get_solution();
            let values = sol.columns();
            let duals = sol.dual_rows().to_vec();
            let n_fixed = self.fixed.len();
            let n_fam: usize = self.families.iter().map(|f| f.columns.len()).sum();
            let artificial: f64 = values[n_fixed + n_fam..].iter().sum();

            let mut added = false;
            for fi in 0..self.families.len() {
                let candidates = (self.families[fi].price)(&duals)?;
                for (key, col) in candidates {
                    let rc = col.cost - col.entries.iter().map(|&(r, a)| a * duals[r]).sum::<f64>();
                    let scale = 1.0 + col.entries.iter().map(|&(r, a)| (a * duals[r]).abs()).sum::<f64>();
                    if rc < -1e-9 * scale && self.families[fi].columns.iter().all(|(k, _)| *k != key) {
                        self.families[fi].columns.push((key, col));
                        added = true;
                    }
                }
            }
            if !added {
                let mut offset = n_fixed;
                let mut families = Vec::with_capacity(self.families.len());
                for f in &self.families {
                    let vals = &values[offset..offset + f.columns.len()];
                    families.push(
                        f.columns
                            .iter()
                            .zip(vals)
                            .filter(|(_, &v)| v > 0.0)
                            .map(|((k, _), &v)| (k.clone(), v))
                            .collect(),
                    );
                    offset += f.columns.len();
                }
                let out = MasterSolution {
                    fixed: values[..n_fixed].to_vec(),
                    families,
                    duals,
                    rounds: round + 1,
                };
                return Ok((out, artificial));
            }
        }
        Err(Error::Sparsification(format!("column generation did not converge in {MAX_ROUNDS} rounds")))
    }
}

/// Runs simplex with tight tolerances, falling back to the solver defaults
/// when the tight run fails or ends without a verdict.
fn solve_lp(p: ColProblem) -> Result<SolvedModel> {
    let mut last = String::new();
    for tight in [true, false] {
        let mut model = Model::new(p.clone());
        model.make_quiet();
        model.set_option("solver", "simplex");
        if tight {
            model.set_option("presolve", "off");
            model.set_option("primal_feasibility_tolerance", 1e-10);
            model.set_option("dual_feasibility_tolerance", 1e-10);
        }
        model.set_sense(Sense::Minimise);
        match model.try_solve() {
            Ok(solved) if solved.status() == HighsModelStatus::Optimal => return Ok(solved),
            Ok(solved) => last = format!("status {:?}", solved.status()),
            Err(e) => last = format!("{e:?}"),
        }
    }
    Err(Error::Sparsification(format!("LP solver failed: {last}")))
}
