//! Rounding a fractional point to a basis.
//!
//! * [`round_sparse`]: two-class randomized rounding (keep fractional
//!   elements with probability `1/d`, integral ones with probability `1/2`,
//!   then extend greedily), with exact outcome enumeration for small inputs.
//! * [`round_deterministic`]: drop elements one at a time, keeping the one
//!   whose removal hurts the relaxation least.
//! * [`round_partition`]: sample a basis of a partition matroid with
//!   probability proportional to `prod_{i in T} x_i`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::instances::{self, Instance};
use crate::relaxation::{self, CpConfig, CpResult, Relaxation, WeightedBasis};
use crate::sparsify::{self, SparsifyConfig};
use crate::{oracle, seed, Error, Result};

/// Most coin-flipping elements the exact enumerators accept.
pub const EXACT_COIN_LIMIT: usize = 20;

/// `(2 e^3 d)^{-d}`: lower bound on `Pr[S ⊆ T]` for size-d independent `S`.
pub fn gamma(d: usize) -> f64 {
    (2.0 * 3f64.exp() * d as f64).powi(-(d as i32))
}

/// `(2 e^5 d)^{-d}`: per-step retention factor of the deterministic rounding.
pub fn beta(d: usize) -> f64 {
    (2.0 * 5f64.exp() * d as f64).powi(-(d as i32))
}

/// A point together with its split into fractional (`r1`) and unit (`r2`) coordinates.
#[derive(Clone, Debug)]
pub struct RoundingInput<'a> {
    pub inst: &'a Instance,
    pub x: Vec<f64>,
    pub frac_eps: f64,
    /// `{i : frac_eps < x_i < 1 - frac_eps}`, ascending.
    pub r1: Vec<usize>,
    /// `{i : x_i >= 1 - frac_eps}`, ascending.
    pub r2: Vec<usize>,
}

impl<'a> RoundingInput<'a> {
    pub fn new(inst: &'a Instance, x: &[f64], frac_eps: f64) -> Result<Self> {
        if x.len() != inst.n() {
            return Err(Error::input("point length differs from ground set size"));
        }
        if !(0.0..0.5).contains(&frac_eps) {
            return Err(Error::input("frac_eps must lie in [0, 0.5)"));
        }
        if let Some(v) = x.iter().find(|v| !(v.is_finite() && **v >= -frac_eps && **v <= 1.0 + frac_eps)) {
            return Err(Error::input(format!("coordinate {v} outside [0, 1]")));
        }
        let r1 = (0..x.len()).filter(|&i| x[i] > frac_eps && x[i] < 1.0 - frac_eps).collect();
        let r2 = (0..x.len()).filter(|&i| x[i] >= 1.0 - frac_eps).collect();
        Ok(RoundingInput {
            inst,
            x: x.to_vec(),
            frac_eps,
            r1,
            r2,
        })
    }

    fn coin_order(&self) -> Vec<(usize, Stage, f64)> {
        let p1 = 1.0 / self.inst.d() as f64;
        self.r1
            .iter()
            .map(|&i| (i, Stage::Fractional, p1))
            .chain(self.r2.iter().map(|&i| (i, Stage::Integral, 0.5)))
            .collect()
    }

    fn check_sparse(&self) -> Result<()> {
        let bound = sparsify::fractional_bound(self.inst.d());
        if self.r1.len() > bound {
            return Err(Error::input(format!(
                "{} fractional coordinates exceed the bound {bound}; sparsify first or use round_oblivious",
                self.r1.len()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Fractional,
    Integral,
    Extension,
    Removal,
    PartitionSample,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub element: usize,
    pub stage: Stage,
    /// Whether adding the element kept the set independent.
    pub feasible: bool,
    pub kept: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundedBasis {
    pub basis: Vec<usize>,
    pub objective: f64,
    pub seed: Option<u64>,
    pub trace: Vec<Decision>,
}

/// Randomized rounding of a sparse point. Fails if the point has more
/// fractional coordinates than the sparsity bound allows.
pub fn round_sparse(input: &RoundingInput, seed: u64) -> Result<RoundedBasis> {
    input.check_sparse()?;
    Ok(round_oblivious(input, seed))
}

/// The same procedure without the sparsity precondition.
pub fn round_oblivious(input: &RoundingInput, seed: u64) -> RoundedBasis {
    let m = &input.inst.matroid;
    let mut rng = seed::rng(seed);
    let mut t = Vec::new();
    let mut trace = Vec::new();
    for (e, stage, p) in input.coin_order() {
        t.push(e);
        let feasible = m.indep(&t);
        // A coin is only drawn for feasible elements.
        let kept = feasible && rng.gen::<f64>() < p;
        if !kept {
            t.pop();
        }
        trace.push(Decision {
            element: e,
            stage,
            feasible,
            kept,
        });
    }
    let before = t.clone();
    extend(input.inst, &mut t);
    for &e in t.iter().filter(|e| !before.contains(e)) {
        trace.push(Decision {
            element: e,
            stage: Stage::Extension,
            feasible: true,
            kept: true,
        });
    }
    RoundedBasis {
        objective: input.inst.objective(&t),
        basis: t,
        seed: Some(seed),
        trace,
    }
}

/// Greedy extension over the ground set in ascending id; sorts the result.
fn extend(inst: &Instance, t: &mut Vec<usize>) {
    let k = inst.k();
    for e in 0..inst.n() {
        if t.len() >= k {
            break;
        }
        if t.contains(&e) {
            continue;
        }
        t.push(e);
        if !inst.matroid.indep(t) {
            t.pop();
        }
    }
    t.sort_unstable();
}

/// Exact output distribution of the randomized rounding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    /// Distinct output bases (ascending) with their probabilities.
    pub outcomes: Vec<(Vec<usize>, f64)>,
}

impl OutcomeDistribution {
    pub fn inclusion_prob(&self, s: &[usize]) -> f64 {
        self.outcomes
            .iter()
            .filter(|(b, _)| s.iter().all(|e| b.binary_search(e).is_ok()))
            .map(|(_, p)| p)
            .sum()
    }

    pub fn expected_objective(&self, inst: &Instance) -> f64 {
        self.outcomes.iter().map(|(b, p)| p * inst.objective(b)).sum()
    }

    pub fn total_probability(&self) -> f64 {
        self.outcomes.iter().map(|(_, p)| p).sum()
    }
}

/// Enumerates every coin pattern. Infeasible elements draw no coin, so the
/// branching is over feasible elements only.
pub fn outcome_distribution(input: &RoundingInput) -> Result<OutcomeDistribution> {
    let order = input.coin_order();
    if order.len() > EXACT_COIN_LIMIT {
        return Err(Error::Scale {
            what: "coin-flipping elements",
            size: order.len(),
            limit: EXACT_COIN_LIMIT,
        });
    }
    let mut acc = BTreeMap::new();
    let mut t = Vec::new();
    branch(input.inst, &order, 0, &mut t, 1.0, &mut acc);
    Ok(OutcomeDistribution {
        outcomes: acc.into_iter().collect(),
    })
}

fn branch(
    inst: &Instance,
    order: &[(usize, Stage, f64)],
    idx: usize,
    t: &mut Vec<usize>,
    prob: f64,
    acc: &mut BTreeMap<Vec<usize>, f64>,
) {
    let Some(&(e, _, p)) = order.get(idx) else {
        let mut basis = t.clone();
        extend(inst, &mut basis);
        *acc.entry(basis).or_insert(0.0) += prob;
        return;
    };
    t.push(e);
    let feasible = inst.matroid.indep(t);
    if feasible && p > 0.0 {
        branch(inst, order, idx + 1, t, prob * p, acc);
    }
    t.pop();
    if !feasible || p < 1.0 {
        let q = if feasible { 1.0 - p } else { 1.0 };
        branch(inst, order, idx + 1, t, prob * q, acc);
    }
}

/// Exact `Pr[S ⊆ T]` for the randomized rounding.
pub fn exact_inclusion_prob(input: &RoundingInput, s: &[usize]) -> Result<f64> {
    Ok(outcome_distribution(input)?.inclusion_prob(s))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectedValue {
    /// `E[det(sum_{i in T} v_i v_i^T)]`.
    pub expectation: f64,
    /// `sum_{S in I_d} det(sum_{i in S} x_i v_i v_i^T)`.
    pub id_sum: f64,
    pub gamma: f64,
}

impl ExpectedValue {
    pub fn bound_holds(&self) -> bool {
        self.expectation >= self.gamma * self.id_sum
    }
}

pub fn expected_value_exact(input: &RoundingInput) -> Result<ExpectedValue> {
    let dist = outcome_distribution(input)?;
    Ok(ExpectedValue {
        expectation: dist.expected_objective(input.inst),
        id_sum: oracle::id_sum(input.inst, &input.x)?,
        gamma: gamma(input.inst.d()),
    })
}

/// Sample mean with a two-sided Hoeffding confidence radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub samples: usize,
    pub mean: f64,
    /// `U sqrt(ln(2 / delta) / (2 N))`.
    pub radius: f64,
    pub delta: f64,
    /// A priori upper bound `U` on every sampled value.
    pub value_bound: f64,
    pub seed: u64,
}

impl MonteCarloEstimate {
    pub fn lower(&self) -> f64 {
        (self.mean - self.radius).max(0.0)
    }

    pub fn upper(&self) -> f64 {
        self.mean + self.radius
    }
}

/// Estimates the expected objective of [`round_oblivious`]. Run `r` uses the
/// seed derived from `(seed, r)`, so the estimate does not depend on threading.
/// `value_bound` must dominate every basis value; `det(sum_i v_i v_i^T)` does.
pub fn expected_value_monte_carlo(
    input: &RoundingInput,
    samples: usize,
    seed: u64,
    delta: f64,
    value_bound: f64,
) -> Result<MonteCarloEstimate> {
    if samples == 0 || !(delta > 0.0 && delta < 1.0) || !(value_bound > 0.0) {
        return Err(Error::input("need samples > 0, delta in (0, 1), value_bound > 0"));
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(samples);
    let chunk = samples.div_ceil(threads);
    let total: f64 = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                scope.spawn(move || {
                    (w * chunk..((w + 1) * chunk).min(samples))
                        .map(|r| round_oblivious(input, seed::derive(seed, &format!("mc/{r}"))).objective)
                        .sum::<f64>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampler thread panicked")).sum()
    });
    Ok(MonteCarloEstimate {
        samples,
        mean: total / samples as f64,
        radius: value_bound * ((2.0 / delta).ln() / (2.0 * samples as f64)).sqrt(),
        delta,
        value_bound,
        seed,
    })
}

/// Probability that the two edges at `a_i` both end up in the rounded tree
/// when the adversarial family is rounded at its fully fractional point.
///
/// With every edge in the fractional class and coin probability 1/2 (d = 2),
/// pair `i` is completed during the coin phase iff no earlier pair was and
/// both of its coins succeed. If no pair is completed, the extension
/// completes pair 0.
pub fn adversarial_pair_prob(m: usize, i: usize) -> f64 {
    let q = 0.75f64;
    if i == 0 {
        0.25 + q.powi(m as i32)
    } else {
        0.25 * q.powi(i as i32)
    }
}

/// Exact expected objective of oblivious rounding on [`instances::gen_adversarial`]
/// at its fully fractional point: only the distinguished pair has value 16.
pub fn adversarial_oblivious_expectation(adv: &instances::Adversarial) -> f64 {
    let m = adv.x_star.len() / 2;
    16.0 * adversarial_pair_prob(m, adv.distinguished)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeterministicConfig {
    pub cp: CpConfig,
    pub sparsify: SparsifyConfig,
    /// Relative slack on the per-step check `OPT_CP(V - i) >= beta OPT_CP(V)`.
    pub beta_tol: f64,
}

impl Default for DeterministicConfig {
    fn default() -> Self {
        DeterministicConfig {
            cp: CpConfig::default(),
            sparsify: SparsifyConfig::default(),
            beta_tol: 1e-2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeterministicStep {
    pub removed: usize,
    /// Relaxation value (log scale) after the removal.
    pub value: f64,
    pub candidates: usize,
    /// `value >= log(beta) + previous - log(1 + beta_tol)`.
    pub beta_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeterministicResult {
    pub rounded: RoundedBasis,
    pub initial_support: Vec<usize>,
    pub initial_value: f64,
    pub steps: Vec<DeterministicStep>,
    pub beta: f64,
}

impl DeterministicResult {
    pub fn beta_violations(&self) -> usize {
        self.steps.iter().filter(|s| !s.beta_ok).count()
    }
}

/// Solves and sparsifies the relaxation, then runs the deterministic rounding.
pub fn round_deterministic(inst: &Instance, cfg: &DeterministicConfig) -> Result<DeterministicResult> {
    let cp = relaxation::solve_cp(inst, &cfg.cp)?;
    let sparse = sparsify::sparsify(inst, &cp, &cfg.sparsify)?;
    round_deterministic_from(inst, &cp, &sparse.x_hat, cfg)
}

/// Deterministic rounding from a sparse optimum `x_hat`: starting from its
/// support, repeatedly delete the rank-preserving element whose removal
/// leaves the largest relaxation value (lowest id on ties).
pub fn round_deterministic_from(
    inst: &Instance,
    cp: &CpResult,
    x_hat: &[f64],
    cfg: &DeterministicConfig,
) -> Result<DeterministicResult> {
    if x_hat.len() != inst.n() {
        return Err(Error::input("point length differs from ground set size"));
    }
    let k = inst.k();
    let mut v: Vec<usize> = (0..inst.n()).filter(|&i| x_hat[i] > cfg.sparsify.frac_eps).collect();
    if inst.matroid.rank_of(&v) != k {
        return Err(Error::Numerical("support of the sparse point does not span the matroid".into()));
    }
    let initial_support = v.clone();
    let log_beta = beta(inst.d()).ln();
    let slack = (1.0 + cfg.beta_tol).ln();
    let mut value = cp.f_value;
    // Warm start for the next solve, in indices local to `v`.
    let mut warm: Option<CpResult> = None;
    let mut steps = Vec::new();
    let mut trace = Vec::new();

    while !inst.matroid.indep(&v) {
        let mut best: Option<(usize, CpResult)> = None;
        let mut candidates = 0;
        for p in 0..v.len() {
            let rest: Vec<usize> = v.iter().enumerate().filter(|&(q, _)| q != p).map(|(_, &e)| e).collect();
            if inst.matroid.rank_of(&rest) != k {
                continue;
            }
            candidates += 1;
            let sub = instances::restrict(inst, &rest)?;
            let res = match solve_restricted(&sub, &cfg.cp, warm.as_ref(), p) {
                Ok(r) => r,
                Err(Error::Infeasible(_)) => continue,
                Err(e) => return Err(e),
            };
            if best.as_ref().map_or(true, |(_, b)| res.f_value > b.f_value) {
                best = Some((p, res));
            }
        }
        let Some((p, res)) = best else {
            return Err(Error::Numerical("no rank-preserving removal has a positive relaxation value".into()));
        };
        let removed = v.remove(p);
        steps.push(DeterministicStep {
            removed,
            value: res.f_value,
            candidates,
            beta_ok: res.f_value >= log_beta + value - slack,
        });
        trace.push(Decision {
            element: removed,
            stage: Stage::Removal,
            feasible: true,
            kept: false,
        });
        value = res.f_value;
        warm = Some(res);
    }
    Ok(DeterministicResult {
        rounded: RoundedBasis {
            objective: inst.objective(&v),
            basis: v,
            seed: None,
            trace,
        },
        initial_support,
        initial_value: cp.f_value,
        steps,
        beta: beta(inst.d()),
    })
}

/// Solves the relaxation on `sub`, which is the previous ground set with local
/// element `dropped` removed. The previous decomposition is repaired by
/// swapping `dropped` out of each basis for the first element that restores
/// full rank.
fn solve_restricted(sub: &Instance, cfg: &CpConfig, warm: Option<&CpResult>, dropped: usize) -> Result<CpResult> {
    let Some(prev) = warm else {
        return relaxation::solve_cp(sub, cfg);
    };
    if !instances::check_opt_positive(sub) {
        return Err(Error::Infeasible("OPT = 0 on the restricted ground set".into()));
    }
    let shift = |e: usize| if e > dropped { e - 1 } else { e };
    let start: Vec<WeightedBasis> = prev
        .decomposition
        .iter()
        .map(|wb| {
            let mut b: Vec<usize> = wb.basis.iter().filter(|&&e| e != dropped).map(|&e| shift(e)).collect();
            extend(sub, &mut b);
            WeightedBasis { basis: b, weight: wb.weight }
        })
        .collect();
    let z: Vec<f64> = prev
        .z
        .iter()
        .enumerate()
        .filter(|&(e, _)| e != dropped)
        .map(|(_, &z)| z)
        .collect();
    Relaxation::new(sub, cfg.b_z)?.solve_warm(cfg, start, Some(&z))
}

struct PartitionView {
    parts: Vec<Vec<usize>>,
    caps: Vec<usize>,
    /// The point clipped to `[0, 1]`.
    x: Vec<f64>,
}

fn partition_view(inst: &Instance, x: &[f64]) -> Result<PartitionView> {
    let (parts, caps) = inst
        .matroid
        .partition_structure()
        .ok_or_else(|| Error::input(format!("{} matroid is not a partition matroid", inst.matroid.kind_name())))?;
    if x.len() != inst.n() {
        return Err(Error::input("point length differs from ground set size"));
    }
    if let Some(v) = x.iter().find(|v| !(v.is_finite() && **v >= -1e-6 && **v <= 1.0 + 1e-6)) {
        return Err(Error::input(format!("coordinate {v} outside [0, 1]")));
    }
    let x: Vec<f64> = x.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    for (part, &b) in parts.iter().zip(&caps) {
        let mass: f64 = part.iter().map(|&i| x[i]).sum();
        if (mass - b as f64).abs() > 1e-6 * (1.0 + b as f64) {
            return Err(Error::input(format!("part mass {mass} differs from its capacity {b}")));
        }
    }
    Ok(PartitionView { parts, caps, x })
}

/// `table[j][t] = e_t(w_j, ..., w_{m-1})` for `t <= b`.
fn suffix_symmetric(w: &[f64], b: usize) -> Vec<Vec<f64>> {
    let m = w.len();
    let mut table = vec![vec![0.0; b + 1]; m + 1];
    table[m][0] = 1.0;
    for j in (0..m).rev() {
        table[j][0] = 1.0;
        for t in 1..=b {
            table[j][t] = table[j + 1][t] + w[j] * table[j + 1][t - 1];
        }
    }
    table
}

/// `e_t(w)` for `t <= b`.
fn elementary_symmetric(w: &[f64], b: usize) -> Vec<f64> {
    let mut e = vec![0.0; b + 1];
    e[0] = 1.0;
    for &wi in w {
        for t in (1..=b).rev() {
            e[t] += wi * e[t - 1];
        }
    }
    e
}

/// Weights of one part, rescaled by their maximum when the part is large.
fn part_weights(x: &[f64], part: &[usize]) -> Vec<f64> {
    let w: Vec<f64> = part.iter().map(|&i| x[i]).collect();
    let max = w.iter().cloned().fold(0.0, f64::max);
    if part.len() > 1000 && max > 0.0 {
        w.iter().map(|v| v / max).collect()
    } else {
        w
    }
}

/// Samples a basis `T` with probability `x^T / sum_R x^R`, part by part, with
/// sequential conditional inclusion probabilities from elementary symmetric
/// polynomials.
pub fn round_partition(inst: &Instance, x: &[f64], seed: u64) -> Result<RoundedBasis> {
    let view = partition_view(inst, x)?;
    let x = &view.x;
    let mut rng = seed::rng(seed);
    let mut t = Vec::new();
    let mut trace = Vec::new();
    for (part, &b) in view.parts.iter().zip(&view.caps) {
        let w = part_weights(x, part);
        let table = suffix_symmetric(&w, b);
        if !(table[0][b] > 0.0) {
            return Err(Error::input("a part has fewer positive coordinates than its capacity"));
        }
        let mut need = b;
        for (j, &e) in part.iter().enumerate() {
            let open = need > 0;
            let kept = if !open {
                false
            } else {
                let p = w[j] * table[j + 1][need - 1] / table[j][need];
                rng.gen::<f64>() < p
            };
            if kept {
                t.push(e);
                need -= 1;
            }
            trace.push(Decision {
                element: e,
                stage: Stage::PartitionSample,
                feasible: open,
                kept,
            });
        }
    }
    t.sort_unstable();
    Ok(RoundedBasis {
        objective: inst.objective(&t),
        basis: t,
        seed: Some(seed),
        trace,
    })
}

/// Exact `Pr[S ⊆ T]` for [`round_partition`]: per part, `x^{S_j}
/// e_{b_j - |S_j|}(rest) / e_{b_j}(part)`, multiplied over parts.
pub fn partition_inclusion_prob_exact(inst: &Instance, x: &[f64], s: &[usize]) -> Result<f64> {
    let view = partition_view(inst, x)?;
    let x = &view.x;
    inst.matroid.is_independent(s)?;
    let mut prob = 1.0;
    for (part, &b) in view.parts.iter().zip(&view.caps) {
        let inside: Vec<usize> = part.iter().copied().filter(|e| s.contains(e)).collect();
        if inside.len() > b {
            return Ok(0.0);
        }
        let rest: Vec<f64> = part.iter().filter(|e| !inside.contains(e)).map(|&i| x[i]).collect();
        let all: Vec<f64> = part.iter().map(|&i| x[i]).collect();
        let fixed: f64 = inside.iter().map(|&i| x[i]).product();
        let num = fixed * elementary_symmetric(&rest, b - inside.len())[b - inside.len()];
        let den = elementary_symmetric(&all, b)[b];
        prob *= num / den;
    }
    Ok(prob)
}

/// Distribution of [`round_partition`] obtained by replaying the sampler's
/// conditional probabilities along every basis.
pub fn partition_distribution_sampler(inst: &Instance, x: &[f64]) -> Result<Vec<(Vec<usize>, f64)>> {
    let view = partition_view(inst, x)?;
    let x = &view.x;
    let tables: Vec<(Vec<f64>, Vec<Vec<f64>>)> = view
        .parts
        .iter()
        .zip(&view.caps)
        .map(|(part, &b)| {
            let w = part_weights(x, part);
            let table = suffix_symmetric(&w, b);
            (w, table)
        })
        .collect();
    let bases = oracle::enumerate_bases(&inst.matroid)?;
    let mut out = Vec::with_capacity(bases.len());
    for basis in bases {
        let mut prob = 1.0;
        for ((part, &b), (w, table)) in view.parts.iter().zip(&view.caps).zip(&tables) {
            let mut need = b;
            for (j, e) in part.iter().enumerate() {
                let p = if need == 0 { 0.0 } else { w[j] * table[j + 1][need - 1] / table[j][need] };
                if basis.binary_search(e).is_ok() {
                    prob *= p;
                    need -= 1;
                } else {
                    prob *= 1.0 - p;
                }
            }
        }
        out.push((basis, prob));
    }
    Ok(out)
}

/// The target distribution `x^T / sum_R x^R`, by enumerating bases.
pub fn partition_distribution_direct(inst: &Instance, x: &[f64]) -> Result<Vec<(Vec<usize>, f64)>> {
    let x = &partition_view(inst, x)?.x;
    let bases = oracle::enumerate_bases(&inst.matroid)?;
    let weights: Vec<f64> = bases.iter().map(|b| b.iter().map(|&i| x[i]).product()).collect();
    let total: f64 = weights.iter().sum();
    Ok(bases.into_iter().zip(weights).map(|(b, w)| (b, w / total)).collect())
}

/// Exact `E[det]` of [`round_partition`] by Cauchy–Binet:
/// `sum_{|S| = d, S independent} Pr[S ⊆ T] det(V_S)^2`.
pub fn partition_expected_value(inst: &Instance, x: &[f64]) -> Result<f64> {
    let x = &partition_view(inst, x)?.x;
    let sets = crate::matroid::independent_sets_of_size(&inst.matroid, inst.d(), crate::enum_limit())?;
    let mut total = 0.0;
    for s in &sets {
        let det = inst.vectors.columns(s).determinant();
        if det != 0.0 {
            total += partition_inclusion_prob_exact(inst, x, s)? * det * det;
        }
    }
    Ok(total)
}
