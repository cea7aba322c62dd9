//! The saddle-point relaxation
//! `sup_{x in P(M)} inf_{z in Z} g(x, z)`, `g(x, z) = log det(sum_i x_i e^{z_i} v_i v_i^T)`,
//! with `Z = {z : z(S) >= 0 for every size-d independent S}`.
//!
//! The inner infimum is a log-barrier Newton method over the explicit list of
//! size-d independent sets inside the box `|z_i| <= B_z`; its duality-gap bound
//! `m / t` is reported as the inner gap. The outer supremum is Frank–Wolfe with
//! the greedy basis as linear oracle.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::instances::{self, Instance, EPS_ZERO};
use crate::matroid::{self, Matroid, Membership};
use crate::numerics::{self, logdet_sym, spd_inverse};
use crate::{seed, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRule {
    /// `2 / (t + 2)`.
    Harmonic,
    /// Exact maximizer of `g(., z)` on the segment with `z` frozen.
    LineSearch,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CpConfig {
    /// Outer stopping rule: `gap <= eps * (1 + |f|)`.
    pub eps: f64,
    /// Target duality gap of each inner solve.
    pub inner_tol: f64,
    /// Box half-width for `z`; `None` picks `20 (1 + d log(1 + max|v|))`.
    pub b_z: Option<f64>,
    pub max_outer: usize,
    pub step: StepRule,
    /// Average the two parallel copies at the end (only on doubled instances).
    pub symmetrize: bool,
    pub seed: u64,
    /// When set, a point whose stationarity check fails at this tolerance is
    /// refined with a tenfold smaller `eps`, at most `max_refinements` times.
    pub kkt_tol: Option<f64>,
    pub max_refinements: usize,
}

impl Default for CpConfig {
    fn default() -> Self {
        CpConfig {
            eps: 1e-3,
            inner_tol: 1e-9,
            b_z: None,
            max_outer: 2000,
            step: StepRule::LineSearch,
            symmetrize: true,
            seed: 0,
            kkt_tol: Some(1e-4),
            max_refinements: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InnerSolution {
    pub z: Vec<f64>,
    /// `g(x, z)`, an upper bound on the infimum.
    pub value: f64,
    /// Barrier duality-gap bound for the boxed problem.
    pub gap: f64,
    pub newton_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub f_value: f64,
    pub outer_gap: f64,
    pub step: f64,
    pub newton_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedBasis {
    pub basis: Vec<usize>,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CpResult {
    pub x: Vec<f64>,
    pub z: Vec<f64>,
    pub f_value: f64,
    pub inner_gap: f64,
    pub outer_gap: f64,
    pub iterations: Vec<IterationRecord>,
    /// `x` as a convex combination of bases.
    pub decomposition: Vec<WeightedBasis>,
    pub b_z: f64,
    pub symmetrized: bool,
    /// Ascent stopped because no step along the Frank–Wolfe direction improved `f`.
    pub stalled: bool,
    pub config: CpConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KktReport {
    pub is_optimal_certificate: bool,
    pub w: Vec<f64>,
    pub sum_w: f64,
    pub membership: Membership,
}

pub fn default_b_z(inst: &Instance) -> f64 {
    20.0 * (1.0 + inst.d() as f64 * (1.0 + inst.vectors.max_norm()).ln())
}

/// `g(x, z)`; `-inf` when `X(x, z)` is singular.
pub fn g_value(inst: &Instance, x: &[f64], z: &[f64]) -> f64 {
    logdet_sym(&numerics::assemble_x(&inst.vectors, x, z))
}

/// `w_i = x_i e^{z_i} v_i^T X^{-1} v_i`.
pub fn grad_z(inst: &Instance, x: &[f64], z: &[f64]) -> Result<Vec<f64>> {
    let q = quadratic_forms(inst, x, z)?;
    Ok((0..inst.n()).map(|i| x[i] * z[i].exp() * q[i]).collect())
}

/// `e^{z_i} v_i^T X^{-1} v_i`, a supergradient of `x -> g(x, z)`.
pub fn grad_x(inst: &Instance, x: &[f64], z: &[f64]) -> Result<Vec<f64>> {
    let q = quadratic_forms(inst, x, z)?;
    Ok((0..inst.n()).map(|i| z[i].exp() * q[i]).collect())
}

fn quadratic_forms(inst: &Instance, x: &[f64], z: &[f64]) -> Result<Vec<f64>> {
    check_lengths(inst, x, z)?;
    let xm = numerics::assemble_x(&inst.vectors, x, z);
    let inv = spd_inverse(&xm).ok_or_else(|| Error::Singular("X(x, z) is singular".into()))?;
    Ok((0..inst.n())
        .map(|i| {
            let v = DVector::from_column_slice(inst.vectors.get(i));
            v.dot(&(&inv * &v))
        })
        .collect())
}

fn check_lengths(inst: &Instance, x: &[f64], z: &[f64]) -> Result<()> {
    if x.len() != inst.n() || z.len() != inst.n() {
        return Err(Error::input("x and z must have one entry per element"));
    }
    Ok(())
}

/// `z - (min_{S in I_d} z(S)) / d`, which lies in `Z` with a tight set.
/// Returns the shifted point and the minimum that was removed.
pub fn shift_to_feasible(inst: &Instance, z: &[f64]) -> Result<(Vec<f64>, f64)> {
    let d = inst.d();
    let (_, min) = matroid::min_weight_size_d_independent(&inst.matroid, z, d)?;
    let c = min / d as f64;
    Ok((z.iter().map(|zi| zi - c).collect(), min))
}

/// Inner infimum `inf_{z in Z} g(x, z)` from a cold start.
pub fn inner_infimum(inst: &Instance, x: &[f64], tol: f64) -> Result<InnerSolution> {
    Relaxation::new(inst, None)?.inner(x, None, tol)
}

/// The relaxation of one instance with its size-d independent sets enumerated.
pub struct Relaxation<'a> {
    inst: &'a Instance,
    sets: Vec<Vec<usize>>,
    b_z: f64,
}

impl<'a> Relaxation<'a> {
    pub fn new(inst: &'a Instance, b_z: Option<f64>) -> Result<Self> {
        let d = inst.d();
        if inst.k() < d {
            return Err(Error::Infeasible(format!("rank {} < d = {d}", inst.k())));
        }
        let sets = matroid::independent_sets_of_size(&inst.matroid, d, crate::enum_limit())?;
        Ok(Relaxation {
            inst,
            sets,
            b_z: b_z.unwrap_or_else(|| default_b_z(inst)),
        })
    }

    pub fn instance(&self) -> &Instance {
        self.inst
    }

    pub fn b_z(&self) -> f64 {
        self.b_z
    }

    /// Minimizes `g(x, .)` over `Z` within the box, optionally warm-started.
    pub fn inner(&self, x: &[f64], warm: Option<&[f64]>, tol: f64) -> Result<InnerSolution> {
        let n = self.inst.n();
        if x.len() != n {
            return Err(Error::input("x must have one entry per element"));
        }
        if x.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::input("x must be finite and non-negative"));
        }
        let m_total = (self.sets.len() + 2 * n) as f64;
        let cold = || (vec![0.5; n], 1.0);
        let (z0, t0) = match warm {
            Some(w) if w.len() == n => {
                let z: Vec<f64> = w.iter().map(|v| v + 1e-3).collect();
                if self.strictly_feasible(&z) {
                    (z, (m_total / 1e-3).max(1.0))
                } else {
                    cold()
                }
            }
            _ => cold(),
        };
        if g_value(self.inst, x, &z0) == f64::NEG_INFINITY {
            return Err(Error::Singular("support of x does not span R^d".into()));
        }
        let gap_target = tol.max(1e-14);
        let mut z = z0;
        let mut t = t0;
        let mut steps = 0;
        loop {
            steps += self.center(x, &mut z, t)?;
            if m_total / t <= gap_target {
                break;
            }
            t = (t * 20.0).min(m_total / gap_target);
        }
        self.lower_unused(x, &mut z);
        let (z, _) = shift_to_feasible(self.inst, &z)?;
        let value = g_value(self.inst, x, &z);
        if !value.is_finite() {
            return Err(Error::Numerical("inner solve produced a non-finite value".into()));
        }
        Ok(InnerSolution {
            z,
            value,
            gap: m_total / t,
            newton_steps: steps,
        })
    }

    fn slacks(&self, z: &[f64]) -> impl Iterator<Item = f64> + '_ {
        let z = z.to_vec();
        self.sets.iter().map(move |s| s.iter().map(|&i| z[i]).sum())
    }

    fn strictly_feasible(&self, z: &[f64]) -> bool {
        z.iter().all(|v| v.abs() < self.b_z) && self.slacks(z).all(|s| s > 0.0)
    }

    fn barrier(&self, x: &[f64], z: &[f64], t: f64) -> f64 {
        if !self.strictly_feasible(z) {
            return f64::INFINITY;
        }
        let g = g_value(self.inst, x, z);
        if !g.is_finite() {
            return f64::INFINITY;
        }
        let b = self.b_z;
        let box_term: f64 = z.iter().map(|v| (b - v).ln() + (b + v).ln()).sum();
        let set_term: f64 = self.slacks(z).map(f64::ln).sum();
        t * g - set_term - box_term
    }

    /// Damped Newton on the barrier at parameter `t`; returns the step count.
    fn center(&self, x: &[f64], z: &mut [f64], t: f64) -> Result<usize> {
        let n = z.len();
        let d = self.inst.d();
        let b = self.b_z;
        for iter in 0..200 {
            let y: Vec<f64> = (0..n).map(|i| x[i] * z[i].exp()).collect();
            let xm = numerics::weighted_gram(&self.inst.vectors, &y);
            let inv = spd_inverse(&xm).ok_or_else(|| Error::Singular("X(x, z) is singular".into()))?;
            let u = DMatrix::from_fn(d, n, |r, c| y[c].sqrt() * self.inst.vectors.get(c)[r]);
            let k = u.transpose() * &inv * &u;
            let mut grad = DVector::<f64>::zeros(n);
            let mut hess = DMatrix::<f64>::zeros(n, n);
            for i in 0..n {
                grad[i] = t * k[(i, i)] + 1.0 / (b - z[i]) - 1.0 / (b + z[i]);
                for j in 0..n {
                    hess[(i, j)] = -t * k[(i, j)] * k[(i, j)];
                }
                hess[(i, i)] += t * k[(i, i)] + 1.0 / (b - z[i]).powi(2) + 1.0 / (b + z[i]).powi(2);
            }
            for (s, slack) in self.sets.iter().zip(self.slacks(z)) {
                let inv_s = 1.0 / slack;
                let inv_s2 = inv_s * inv_s;
                for &a in s {
                    grad[a] -= inv_s;
                    for &c in s {
                        hess[(a, c)] += inv_s2;
                    }
                }
            }
            let step = match hess.clone().cholesky() {
                Some(ch) => ch.solve(&(-&grad)),
                None => {
                    let ridge = 1e-12 * hess.diagonal().amax();
                    let reg = hess + DMatrix::identity(n, n) * ridge;
                    reg.cholesky()
                        .ok_or_else(|| Error::Numerical("barrier Hessian is not positive definite".into()))?
                        .solve(&(-&grad))
                }
            };
            let decrement = -grad.dot(&step);
            if !decrement.is_finite() {
                return Err(Error::Numerical("non-finite Newton decrement".into()));
            }
            if decrement <= 1e-10 {
                return Ok(iter);
            }
            let phi = self.barrier(x, z, t);
            let mut alpha = 1.0;
            let mut moved = false;
            for _ in 0..60 {
                let cand: Vec<f64> = (0..n).map(|i| z[i] + alpha * step[i]).collect();
                let val = self.barrier(x, &cand, t);
                if val <= phi - 0.25 * alpha * decrement + 1e-13 * phi.abs() {
                    z.copy_from_slice(&cand);
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if !moved {
                // No representable progress left at this precision.
                return Ok(iter);
            }
        }
        Ok(200)
    }

    /// Coordinates with no mass do not affect `g`; drop each to the smallest
    /// value that keeps every size-d set non-negative. This makes `grad_x`
    /// there the one-sided derivative of the infimum.
    fn lower_unused(&self, x: &[f64], z: &mut [f64]) {
        let d = self.inst.d();
        let m = &self.inst.matroid;
        for i in 0..z.len() {
            if x[i] > EPS_ZERO {
                continue;
            }
            let mut order: Vec<usize> = (0..z.len()).filter(|&e| e != i).collect();
            order.sort_by(|&a, &c| z[a].total_cmp(&z[c]).then(a.cmp(&c)));
            let mut t = vec![i];
            if !m.indep(&t) {
                z[i] = -self.b_z;
                continue;
            }
            for &e in &order {
                if t.len() == d {
                    break;
                }
                t.push(e);
                if !m.indep(&t) {
                    t.pop();
                }
            }
            if t.len() < d {
                z[i] = -self.b_z;
                continue;
            }
            let rest: f64 = t[1..].iter().map(|&e| z[e]).sum();
            z[i] = (-rest).max(-self.b_z);
        }
    }

    /// Frank–Wolfe ascent of `f(x) = inf_z g(x, z)` over the base polytope.
    pub fn solve(&self, cfg: &CpConfig) -> Result<CpResult> {
        let inst = self.inst;
        let n = inst.n();
        let d = inst.d();
        let mut rng = seed::rng(cfg.seed);
        let mut decomposition: Vec<WeightedBasis> = Vec::new();
        for _ in 0..50 * (d + 1) {
            let w: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            let b = inst.matroid.max_weight_basis(&w)?;
            if decomposition.iter().all(|wb| wb.basis != b) {
                decomposition.push(WeightedBasis { basis: b, weight: 0.0 });
            }
            if decomposition.len() == d + 1 {
                break;
            }
        }
        // Random bases can span R^d only through perturbation noise; a basis
        // through a well-spanning independent set keeps the start well posed.
        let norms: Vec<f64> = (0..n).map(|i| inst.vectors.get(i).iter().map(|a| a * a).sum()).collect();
        let extra = [Some(inst.matroid.max_weight_basis(&norms)?), instances::spanning_basis(inst)];
        for b in extra.into_iter().flatten() {
            if decomposition.iter().all(|wb| wb.basis != b) {
                decomposition.push(WeightedBasis { basis: b, weight: 0.0 });
            }
        }
        let share = 1.0 / decomposition.len() as f64;
        decomposition.iter_mut().for_each(|wb| wb.weight = share);
        self.ascend(cfg, decomposition, None)
    }

    /// [`Relaxation::solve`] started from a given convex combination of bases
    /// and, optionally, a previous inner solution.
    pub fn solve_warm(&self, cfg: &CpConfig, start: Vec<WeightedBasis>, z: Option<&[f64]>) -> Result<CpResult> {
        let total: f64 = start.iter().map(|wb| wb.weight).sum();
        if start.is_empty() || !(total > 0.0) {
            return Err(Error::input("warm start needs at least one basis with positive weight"));
        }
        for wb in &start {
            if !(wb.weight >= 0.0) || !self.inst.matroid.is_independent(&wb.basis)? || wb.basis.len() != self.inst.k() {
                return Err(Error::input("warm start contains a non-basis"));
            }
        }
        if z.is_some_and(|z| z.len() != self.inst.n()) {
            return Err(Error::input("warm start z has the wrong length"));
        }
        let start = start
            .into_iter()
            .map(|wb| WeightedBasis { weight: wb.weight / total, ..wb })
            .filter(|wb| wb.weight > 0.0)
            .collect();
        self.ascend(cfg, merge_bases(start), z)
    }

    fn ascend(&self, cfg: &CpConfig, decomposition: Vec<WeightedBasis>, warm: Option<&[f64]>) -> Result<CpResult> {
        let mut res = self.ascend_once(cfg, decomposition, warm)?;
        let Some(tol) = cfg.kkt_tol else { return Ok(res) };
        let mut eps = cfg.eps;
        for _ in 0..cfg.max_refinements {
            if res.stalled || check_kkt(self.inst, &res.x, &res.z, tol)?.is_optimal_certificate {
                break;
            }
            eps /= 10.0;
            let tighter = CpConfig { eps, ..cfg.clone() };
            let mut next = self.ascend_once(&tighter, res.decomposition.clone(), Some(&res.z))?;
            res.iterations.append(&mut next.iterations);
            next.iterations = std::mem::take(&mut res.iterations);
            next.config = cfg.clone();
            res = next;
        }
        Ok(res)
    }

    fn ascend_once(&self, cfg: &CpConfig, mut decomposition: Vec<WeightedBasis>, warm: Option<&[f64]>) -> Result<CpResult> {
        let inst = self.inst;
        let n = inst.n();
        let mut x = point_of(&decomposition, n);

        let mut inner = match warm.map(|z| self.inner(&x, Some(z), cfg.inner_tol)) {
            Some(Ok(sol)) => sol,
            _ => self.inner(&x, None, cfg.inner_tol)?,
        };
        let mut iterations = Vec::new();
        let mut stalled = false;
        let mut outer_gap;
        let mut t = 0usize;
        loop {
            let grad = grad_x(inst, &x, &inner.z)?;
            let s = inst.matroid.max_weight_basis(&grad)?;
            outer_gap = fw_gap(&grad, &x, &s);
            iterations.push(IterationRecord {
                f_value: inner.value,
                outer_gap,
                step: 0.0,
                newton_steps: inner.newton_steps,
            });
            if outer_gap <= cfg.eps * (1.0 + inner.value.abs()) || t >= cfg.max_outer {
                break;
            }
            let mut gamma = match cfg.step {
                StepRule::Harmonic => 2.0 / (t as f64 + 2.0),
                StepRule::LineSearch => line_search(inst, &x, &inner.z, &s),
            };
            let mut accepted = None;
            for _ in 0..30 {
                let cand = toward(&x, &s, gamma);
                if let Ok(sol) = self.inner(&cand, Some(&inner.z), cfg.inner_tol) {
                    if sol.value >= inner.value - 1e-10 * (1.0 + inner.value.abs()) {
                        accepted = Some((cand, sol));
                        break;
                    }
                }
                gamma *= 0.5;
            }
            let Some((cand, sol)) = accepted else {
                stalled = true;
                break;
            };
            for wb in decomposition.iter_mut() {
                wb.weight *= 1.0 - gamma;
            }
            match decomposition.iter_mut().find(|wb| wb.basis == s) {
                Some(wb) => wb.weight += gamma,
                None => decomposition.push(WeightedBasis { basis: s, weight: gamma }),
            }
            decomposition.retain(|wb| wb.weight > 0.0);
            x = cand;
            inner = sol;
            iterations.last_mut().unwrap().step = gamma;
            t += 1;
        }

        let symmetrized = cfg.symmetrize && inst.copies() == 2;
        if symmetrized {
            let mut mirrored = Vec::with_capacity(2 * decomposition.len());
            for wb in &decomposition {
                let mut swapped: Vec<usize> = wb.basis.iter().map(|e| e ^ 1).collect();
                swapped.sort_unstable();
                mirrored.push(WeightedBasis { basis: wb.basis.clone(), weight: wb.weight / 2.0 });
                mirrored.push(WeightedBasis { basis: swapped, weight: wb.weight / 2.0 });
            }
            decomposition = merge_bases(mirrored);
            x = point_of(&decomposition, n);
            inner = self.inner(&x, Some(&inner.z), cfg.inner_tol)?;
            let grad = grad_x(inst, &x, &inner.z)?;
            let s = inst.matroid.max_weight_basis(&grad)?;
            outer_gap = fw_gap(&grad, &x, &s);
            if let Some(v) = x.iter().find(|v| **v > 0.5 + 1e-6) {
                return Err(Error::Numerical(format!("half-box violated after symmetrization: {v}")));
            }
        }
        Ok(CpResult {
            x,
            z: inner.z,
            f_value: inner.value,
            inner_gap: inner.gap,
            outer_gap: outer_gap.max(0.0),
            iterations,
            decomposition,
            b_z: self.b_z,
            symmetrized,
            stalled,
            config: cfg.clone(),
        })
    }
}

/// Solves the relaxation on a (preprocessed) instance.
pub fn solve_cp(inst: &Instance, cfg: &CpConfig) -> Result<CpResult> {
    if !instances::check_opt_positive(inst) {
        return Err(Error::Infeasible("OPT = 0: no size-d independent set spans R^d".into()));
    }
    Relaxation::new(inst, cfg.b_z)?.solve(cfg)
}

fn point_of(decomposition: &[WeightedBasis], n: usize) -> Vec<f64> {
    let mut x = vec![0.0; n];
    for wb in decomposition {
        for &e in &wb.basis {
            x[e] += wb.weight;
        }
    }
    x
}

fn merge_bases(list: Vec<WeightedBasis>) -> Vec<WeightedBasis> {
    let mut out: Vec<WeightedBasis> = Vec::new();
    for wb in list {
        match out.iter_mut().find(|o| o.basis == wb.basis) {
            Some(o) => o.weight += wb.weight,
            None => out.push(wb),
        }
    }
    out
}

fn toward(x: &[f64], s: &[usize], gamma: f64) -> Vec<f64> {
    let mut out: Vec<f64> = x.iter().map(|v| (1.0 - gamma) * v).collect();
    for &e in s {
        out[e] += gamma;
    }
    out
}

fn fw_gap(grad: &[f64], x: &[f64], s: &[usize]) -> f64 {
    let at_s: f64 = s.iter().map(|&e| grad[e]).sum();
    let at_x: f64 = grad.iter().zip(x).map(|(g, v)| g * v).sum();
    at_s - at_x
}

/// Maximizes `log det((1 - a) X + a S)` over `a in [0, 1]` with `z` frozen,
/// using the eigenvalues `nu` of `X^{-1} S`: the derivative is
/// `sum (nu - 1) / (1 + a (nu - 1))`.
fn line_search(inst: &Instance, x: &[f64], z: &[f64], s: &[usize]) -> f64 {
    let n = inst.n();
    let xm = numerics::assemble_x(&inst.vectors, x, z);
    let mut w = vec![0.0; n];
    for &e in s {
        w[e] = z[e].exp();
    }
    let sm = numerics::weighted_gram(&inst.vectors, &w);
    let Some(chol) = xm.cholesky() else { return 0.5 };
    let l = chol.l();
    let Some(linv) = l.clone().try_inverse() else { return 0.5 };
    let m = &linv * sm * linv.transpose();
    let m = (&m + m.transpose()) * 0.5;
    let nu = m.symmetric_eigenvalues();
    let deriv = |a: f64| nu.iter().map(|v| (v - 1.0) / (1.0 + a * (v - 1.0))).sum::<f64>();
    if deriv(1.0) >= 0.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if deriv(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo.max(1e-12)
}

/// Certifies inner optimality of `z` for `x`: `w = grad_z` must lie in the
/// base polytope of the matroid of minimum-weight size-d sets, and sum to `d`.
pub fn check_kkt(inst: &Instance, x: &[f64], z: &[f64], tol: f64) -> Result<KktReport> {
    let w = grad_z(inst, x, z)?;
    let d = inst.d();
    let mstar = matroid::min_weight_basis_matroid(&inst.matroid.truncate(d), z, None)?;
    let membership = matroid::base_polytope_membership(&mstar, &w, tol)?;
    let sum_w: f64 = w.iter().sum();
    Ok(KktReport {
        is_optimal_certificate: membership.is_inside() && (sum_w - d as f64).abs() <= tol,
        w,
        sum_w,
        membership,
    })
}

/// The minimum-weight-basis matroid of `I_d` under `z`.
pub fn tight_matroid(inst: &Instance, z: &[f64]) -> Result<Matroid> {
    matroid::min_weight_basis_matroid(&inst.matroid.truncate(inst.d()), z, None)
}
