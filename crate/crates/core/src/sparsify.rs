//! Sparsification of a relaxation optimum.
//!
//! With `z*` frozen, every `x` that keeps `X(x, z*)` fixed, stays in `P(M)`
//! and keeps `(a_i x_i)` inside the base polytope of the tight-set matroid
//! `M*` is again optimal. Vertices of that polytope have few fractional
//! coordinates. Both polytope memberships are written with one variable per
//! basis (a convex combination), which avoids listing `2^n` rank rows.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::instances::{Instance, EPS_ZERO};
use crate::matroid::{self, Matroid};
use crate::numerics;
use crate::colgen::{Column, Family, Master};
use crate::relaxation::{self, CpResult, Relaxation};
use crate::seed;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparsifyConfig {
    pub frac_eps: f64,
    /// Allowed `|f(x_hat) - f(x*)| / max(1, |f(x*)|)`.
    pub value_tol: f64,
    pub eps_lp: f64,
    /// Allowed gap between `grad_z` and its decomposition over `M*` bases.
    pub kkt_tol: f64,
    pub inner_tol: f64,
    pub seed: u64,
    pub max_reseeds: usize,
    /// Largest vertex support for which tight rows are enumerated.
    pub certify_limit: usize,
}

impl Default for SparsifyConfig {
    fn default() -> Self {
        SparsifyConfig {
            frac_eps: 1e-6,
            value_tol: 1e-4,
            eps_lp: 1e-8,
            kkt_tol: 1e-4,
            inner_tol: 1e-9,
            seed: 0,
            max_reseeds: 5,
            certify_limit: 20,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowFamily {
    /// `x(S) <= r(S)`.
    Rank,
    /// `sum_{i in S} a_i x_i <= r*(S)`.
    WeightedRank,
    /// One entry of `sum x_i e^{z_i} v_i v_i^T = X*`.
    Matrix,
}

/// A tight constraint, with `set` in original element ids (for `Matrix`,
/// the entry `(row, col)`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightRow {
    pub family: RowFamily,
    pub set: Vec<usize>,
}

/// The sparsification LP restricted to the support `U` of `x*`.
#[derive(Clone, Debug)]
pub struct SparsificationLp {
    /// Original ids of the LP variables.
    pub support: Vec<usize>,
    pub x_star: Vec<f64>,
    /// `a_i` chosen so that `a_i x*_i` is an exact point of `P(M*|U)`.
    pub coeffs: Vec<f64>,
    /// Distance between `grad_z` and that point.
    pub decomposition_error: f64,
    pub target: DMatrix<f64>,
    /// `e^{z_i} v_i v_i^T`, upper triangle, one row per matrix entry.
    pub gram_rows: Vec<(usize, usize, Vec<f64>)>,
    pub m: Matroid,
    pub m_star: Matroid,
    /// `M*|U` bases carrying the decomposition of `a_i x*_i`, used as warm columns.
    pub star_bases: Vec<Vec<usize>>,
}

/// A vertex returned by the LP solver before polishing.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtremePoint {
    pub x: Vec<f64>,
    /// Largest mismatch between `x` (and `a_i x_i`) and the basis
    /// combinations the solver found for it.
    pub decomposition_residual: f64,
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexCertificate {
    /// Rank of the tight rows on the vertex support.
    pub rank: usize,
    pub support_size: usize,
    /// A maximal independent family of tight rows.
    pub rows: Vec<TightRow>,
}

impl VertexCertificate {
    pub fn is_vertex(&self) -> bool {
        self.rank == self.support_size
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseSolution {
    pub x_hat: Vec<f64>,
    pub fractional_support: Vec<usize>,
    pub bound: usize,
    pub f_before: f64,
    pub f_after: f64,
    /// `|f_after - f_before| / max(1, |f_before|)`.
    pub value_check: f64,
    /// Largest entry of `|X(x_hat, z*) - X(x*, z*)|` over the largest entry of `X*`.
    pub matrix_residual: f64,
    pub decomposition_error: f64,
    pub certificate: Option<VertexCertificate>,
    pub lp_support: usize,
    pub seed: u64,
    pub reseeds: usize,
    /// Why earlier seeds were rejected.
    pub rejected: Vec<String>,
}

/// `2 (C(d+1, 2) + d)`.
pub fn fractional_bound(d: usize) -> usize {
    2 * (d * (d + 1) / 2 + d)
}

/// `|{i : frac_eps < x_i < 1 - frac_eps}|`.
pub fn count_fractional(x: &[f64], frac_eps: f64) -> usize {
    x.iter().filter(|&&v| v > frac_eps && v < 1.0 - frac_eps).count()
}

pub fn build_lp(inst: &Instance, x_star: &[f64], z_star: &[f64], kkt_tol: f64) -> Result<SparsificationLp> {
    let n = inst.n();
    let d = inst.d();
    if x_star.len() != n || z_star.len() != n {
        return Err(Error::input("x and z must have one entry per element"));
    }
    let support: Vec<usize> = (0..n).filter(|&i| x_star[i] > EPS_ZERO).collect();
    let m = inst.matroid.restrict(&support);
    let m_star = relaxation::tight_matroid(inst, z_star)?.restrict(&support);
    if m_star.full_rank() != d {
        return Err(Error::Sparsification(
            "support of x* does not contain a tight size-d set".into(),
        ));
    }

    let w_full = relaxation::grad_z(inst, x_star, z_star)?;
    let w: Vec<f64> = support.iter().map(|&i| w_full[i]).collect();
    let (w_hat, star_bases) = project_onto_base_polytope(&m_star, &w)?;
    let decomposition_error = w_hat.iter().zip(&w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if decomposition_error > kkt_tol {
        return Err(Error::Sparsification(format!(
            "grad_z is {decomposition_error:.3e} away from the tight-set base polytope"
        )));
    }
    let xs: Vec<f64> = support.iter().map(|&i| x_star[i]).collect();
    let coeffs: Vec<f64> = w_hat.iter().zip(&xs).map(|(w, x)| w / x).collect();

    let target = numerics::assemble_x(&inst.vectors, x_star, z_star);
    let mut gram_rows = Vec::new();
    for r in 0..d {
        for c in r..d {
            let row = support
                .iter()
                .map(|&i| {
                    let v = inst.vectors.get(i);
                    z_star[i].exp() * v[r] * v[c]
                })
                .collect();
            gram_rows.push((r, c, row));
        }
    }
    Ok(SparsificationLp {
        support,
        x_star: xs,
        coeffs,
        decomposition_error,
        target,
        gram_rows,
        m,
        m_star,
        star_bases,
    })
}

fn basis_column(basis: &[usize], coef: impl Fn(usize) -> (usize, f64), sum_row: usize) -> Column {
    let mut entries: Vec<(usize, f64)> = basis.iter().map(|&i| coef(i)).collect();
    entries.push((sum_row, 1.0));
    Column { cost: 0.0, entries }
}

/// Closest point (in L1) to `w` in `P(m)`, with the bases of its decomposition.
fn project_onto_base_polytope(m: &Matroid, w: &[f64]) -> Result<(Vec<f64>, Vec<Vec<usize>>)> {
    let u = w.len();
    let column = |b: &[usize]| basis_column(b, |i| (i, 1.0), u);
    let start = m.max_weight_basis(w)?;
    let mut fixed = Vec::with_capacity(2 * u);
    for i in 0..u {
        fixed.push(Column { cost: 1.0, entries: vec![(i, 1.0)] });
        fixed.push(Column { cost: 1.0, entries: vec![(i, -1.0)] });
    }
    let mut rhs = w.to_vec();
    rhs.push(1.0);
    let mut master = Master {
        rhs,
        fixed,
        families: vec![Family {
            columns: vec![(start.clone(), column(&start))],
            price: Box::new(|y: &[f64]| {
                let b = m.max_weight_basis(&y[..u])?;
                let col = column(&b);
                Ok(vec![(b, col)])
            }),
        }],
    };
    let sol = master.solve()?;
    let total: f64 = sol.families[0].iter().map(|(_, v)| v).sum();
    let mut hat = vec![0.0; u];
    let mut bases = Vec::new();
    for (b, v) in &sol.families[0] {
        for &i in b {
            hat[i] += v / total;
        }
        bases.push(b.clone());
    }
    Ok((hat, bases))
}

impl SparsificationLp {
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Largest violation over the three constraint families at a point on `U`.
    /// The two polytope memberships are enumerated on small supports and
    /// solved as an LP on large ones.
    pub fn residual(&self, x: &[f64]) -> Result<f64> {
        let scale = self.target.amax().max(f64::MIN_POSITIVE);
        let mut worst = self
            .gram_rows
            .iter()
            .map(|(r, c, row)| (dot(row, x) - self.target[(*r, *c)]).abs() / scale)
            .fold(0.0, f64::max);
        worst = worst.max(x.iter().map(|v| (-v).max(0.0)).fold(0.0, f64::max));
        for (m, y) in [
            (&self.m, x.to_vec()),
            (&self.m_star, x.iter().zip(&self.coeffs).map(|(a, b)| a * b).collect()),
        ] {
            let u: Vec<usize> = (0..y.len()).filter(|&i| y[i] > 0.0).collect();
            let (excess, _) = if u.len() > matroid::DEFAULT_MEMBERSHIP_LIMIT {
                matroid::max_rank_violation_lp(m, &y, &u)?
            } else {
                matroid::max_rank_violation(m, &y, &u)
            };
            let total: f64 = y.iter().sum();
            worst = worst.max(excess).max((total - m.full_rank() as f64).abs());
        }
        Ok(worst)
    }

    /// Tight rows at `x` restricted to its support, and their rank.
    pub fn certify(&self, x: &[f64], tol: f64) -> Result<VertexCertificate> {
        let s = positive_support(x);
        self.tight_system(x, &s, tol).map(|(cert, _)| cert)
    }

    fn tight_system(
        &self,
        x: &[f64],
        s: &[usize],
        tol: f64,
    ) -> Result<(VertexCertificate, TightSystem)> {
        let mut sys = TightSystem {
            span: RowSpan::new(s.len()),
            rows: Vec::new(),
            rhs: Vec::new(),
            tags: Vec::new(),
        };
        for (r, c, row) in &self.gram_rows {
            let restricted: Vec<f64> = s.iter().map(|&i| row[i]).collect();
            sys.offer(restricted, self.target[(*r, *c)], TightRow { family: RowFamily::Matrix, set: vec![*r, *c] });
        }
        let families: [(&Matroid, Vec<f64>, RowFamily); 2] = [
            (&self.m, vec![1.0; x.len()], RowFamily::Rank),
            (&self.m_star, self.coeffs.clone(), RowFamily::WeightedRank),
        ];
        for (m, a, family) in families {
            if sys.span.full() {
                break;
            }
            let mut found: Vec<(f64, Vec<usize>, usize)> = Vec::new();
            matroid::for_each_subset_rank(m, s, |set, rank| {
                let slack = (set.iter().map(|&i| a[i] * x[i]).sum::<f64>() - rank as f64).abs();
                if slack <= tol {
                    found.push((slack, set.to_vec(), rank));
                }
            });
            // Tightest rows first, so near-tight impostors are only used last.
            found.sort_by(|p, q| p.0.total_cmp(&q.0));
            for (_, set, rank) in found {
                let row: Vec<f64> = s.iter().map(|i| if set.contains(i) { a[*i] } else { 0.0 }).collect();
                let ids = set.iter().map(|&i| self.support[i]).collect();
                sys.offer(row, rank as f64, TightRow { family, set: ids });
                if sys.span.full() {
                    break;
                }
            }
        }
        let cert = VertexCertificate {
            rank: sys.rows.len(),
            support_size: s.len(),
            rows: sys.tags.clone(),
        };
        Ok((cert, sys))
    }

    /// Recomputes a certified vertex from its tight rows, removing solver noise.
    pub fn polish(&self, x: &[f64], tol: f64) -> Result<Option<(Vec<f64>, VertexCertificate)>> {
        let s = positive_support(x);
        let (cert, sys) = self.tight_system(x, &s, tol)?;
        if !cert.is_vertex() {
            return Ok(None);
        }
        let k = s.len();
        let a = DMatrix::from_fn(k, k, |r, c| sys.rows[r][c]);
        let Some(sol) = a.lu().solve(&DVector::from_vec(sys.rhs)) else {
            return Ok(None);
        };
        let mut out = vec![0.0; x.len()];
        for (j, &i) in s.iter().enumerate() {
            out[i] = sol[j];
        }
        Ok(Some((out, cert)))
    }

    /// Walks from a feasible point to a vertex: while the tight rows leave a
    /// free direction, moves along it until another constraint becomes tight
    /// or a coordinate reaches zero.
    pub fn purify(&self, x: &[f64], tol: f64) -> Result<Vec<f64>> {
        let mut x = x.to_vec();
        let weights = [vec![1.0; x.len()], self.coeffs.clone()];
        for _ in 0..2 * x.len() + 2 {
            x.iter_mut().filter(|v| **v <= 1e-12).for_each(|v| *v = 0.0);
            let s = positive_support(&x);
            let (cert, sys) = self.tight_system(&x, &s, tol)?;
            if cert.is_vertex() {
                return Ok(x);
            }
            let dir = sys.span.free_direction();
            let mut pos = vec![usize::MAX; x.len()];
            s.iter().enumerate().for_each(|(j, &i)| pos[i] = j);
            let mut step = f64::INFINITY;
            for (j, &i) in s.iter().enumerate() {
                if dir[j] < 0.0 {
                    step = step.min(-x[i] / dir[j]);
                }
            }
            for (m, a) in [(&self.m, &weights[0]), (&self.m_star, &weights[1])] {
                matroid::for_each_subset_rank(m, &s, |set, rank| {
                    let rate: f64 = set.iter().map(|&i| a[i] * dir[pos[i]]).sum();
                    let slack = rank as f64 - set.iter().map(|&i| a[i] * x[i]).sum::<f64>();
                    // Rows tight within `tol` are already in the span or
                    // dependent on it; their rate is rounding noise.
                    if rate > 1e-12 && slack > tol {
                        step = step.min(slack / rate);
                    }
                });
            }
            if !step.is_finite() {
                return Err(Error::Degenerate("feasible region is unbounded along a free direction".into()));
            }
            for (j, &i) in s.iter().enumerate() {
                x[i] += step * dir[j];
            }
        }
        Err(Error::Degenerate("vertex walk did not terminate".into()))
    }

    /// A certified vertex at or near `raw`: first by reading off its tight
    /// rows at growing tolerances, then by walking to a vertex.
    fn vertex_near(&self, raw: &[f64], eps_lp: f64) -> Result<Option<(Vec<f64>, VertexCertificate)>> {
        // The solver output is accurate to roughly its feasibility tolerance,
        // so tightness is detected at growing tolerances and every polished
        // vertex is re-checked against all constraints.
        let tols = [1e-8, 1e-7, 1e-6, 1e-5];
        for &tol in &tols {
            if let Some((x, cert)) = self.polish(raw, tol)? {
                if self.residual(&x)? <= eps_lp {
                    return Ok(Some((x, cert)));
                }
            }
        }
        let walked = match self.purify(raw, 1e-9) {
            Ok(w) => w,
            Err(Error::Degenerate(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        for &tol in &tols {
            if let Some((x, cert)) = self.polish(&walked, tol)? {
                if self.residual(&x)? <= eps_lp {
                    return Ok(Some((x, cert)));
                }
            }
        }
        Ok(None)
    }

    /// Minimizes a seeded random linear objective; the optimum is a vertex
    /// with probability one.
    pub fn extreme_point(&self, seed: u64) -> Result<ExtremePoint> {
        let u = self.len();
        let mut rng = seed::rng(seed);
        let (row_a, row_b, row_c, row_d, row_e) = (0, u, u + 1, 2 * u + 1, 2 * u + 2);
        // Rows C are divided by a_i, so each has a unit entry on x_i.
        let kappa: Vec<f64> = self.coeffs.iter().map(|&a| if a > 0.0 { -1.0 / a } else { 1.0 }).collect();

        let mut fixed = Vec::with_capacity(u);
        for i in 0..u {
            let mut entries = vec![(row_a + i, 1.0)];
            if self.coeffs[i] > 0.0 {
                entries.push((row_c + i, 1.0));
            }
            for (e, (_, _, row)) in self.gram_rows.iter().enumerate() {
                let scale = row_scale(row);
                if row[i] != 0.0 && scale > 0.0 {
                    entries.push((row_e + e, row[i] / scale));
                }
            }
            fixed.push(Column { cost: rng.gen_range(-1.0..1.0), entries });
        }
        let mut rhs = vec![0.0; row_e + self.gram_rows.len()];
        rhs[row_b] = 1.0;
        rhs[row_d] = 1.0;
        for (e, (r, c, row)) in self.gram_rows.iter().enumerate() {
            let scale = row_scale(row);
            if scale > 0.0 {
                rhs[row_e + e] = self.target[(*r, *c)] / scale;
            }
        }

        let lambda = |b: &[usize]| basis_column(b, |i| (row_a + i, -1.0), row_b);
        let mu = |b: &[usize]| basis_column(b, |i| (row_c + i, kappa[i]), row_d);
        let start = self.m.max_weight_basis(&self.x_star)?;
        let mut master = Master {
            rhs,
            fixed,
            families: vec![
                Family {
                    columns: vec![(start.clone(), lambda(&start))],
                    price: Box::new(|y: &[f64]| {
                        let neg: Vec<f64> = y[row_a..row_a + u].iter().map(|v| -v).collect();
                        let b = self.m.max_weight_basis(&neg)?;
                        let col = lambda(&b);
                        Ok(vec![(b, col)])
                    }),
                },
                Family {
                    columns: self.star_bases.iter().map(|b| (b.clone(), mu(b))).collect(),
                    price: Box::new(|y: &[f64]| {
                        let w: Vec<f64> = (0..u).map(|i| kappa[i] * y[row_c + i]).collect();
                        let b = self.m_star.max_weight_basis(&w)?;
                        let col = mu(&b);
                        Ok(vec![(b, col)])
                    }),
                },
            ],
        };
        let sol = master.solve()?;
        let x: Vec<f64> = sol.fixed.iter().map(|v| v.max(0.0)).collect();

        let mut from_bases = vec![0.0; u];
        let mut from_star = vec![0.0; u];
        for (target, combo) in [(&mut from_bases, &sol.families[0]), (&mut from_star, &sol.families[1])] {
            let total: f64 = combo.iter().map(|(_, v)| v).sum();
            for (b, v) in combo {
                for &i in b {
                    target[i] += v / total;
                }
            }
        }
        let decomposition_residual = (0..u)
            .map(|i| (x[i] - from_bases[i]).abs().max((self.coeffs[i] * x[i] - from_star[i]).abs()))
            .fold(0.0, f64::max);
        Ok(ExtremePoint {
            x,
            decomposition_residual,
            rounds: sol.rounds,
        })
    }
}

fn row_scale(row: &[f64]) -> f64 {
    row.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Coordinates above `1e-10`; the solver leaves nonbasic variables at exactly zero.
fn positive_support(x: &[f64]) -> Vec<usize> {
    (0..x.len()).filter(|&i| x[i] > 1e-10).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct TightSystem {
    span: RowSpan,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    tags: Vec<TightRow>,
}

impl TightSystem {
    fn offer(&mut self, row: Vec<f64>, b: f64, tag: TightRow) {
        if self.span.add(&row) {
            self.rows.push(row);
            self.rhs.push(b);
            self.tags.push(tag);
        }
    }
}

/// Incremental row rank by Gram–Schmidt on normalized rows.
struct RowSpan {
    dim: usize,
    basis: Vec<Vec<f64>>,
}

impl RowSpan {
    fn new(dim: usize) -> Self {
        RowSpan { dim, basis: Vec::new() }
    }

    /// Unit vector orthogonal to every accepted row.
    fn free_direction(&self) -> Vec<f64> {
        let mut best = (0.0, vec![0.0; self.dim]);
        for j in 0..self.dim {
            let mut r = vec![0.0; self.dim];
            r[j] = 1.0;
            for _ in 0..2 {
                for b in &self.basis {
                    let c = dot(&r, b);
                    r.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
                }
            }
            let norm = dot(&r, &r).sqrt();
            if norm > best.0 {
                best = (norm, r.iter().map(|v| v / norm).collect());
            }
        }
        best.1
    }

    fn full(&self) -> bool {
        self.basis.len() == self.dim
    }

    fn add(&mut self, row: &[f64]) -> bool {
        if self.full() {
            return false;
        }
        let norm = dot(row, row).sqrt();
        if norm == 0.0 {
            return false;
        }
        let mut r: Vec<f64> = row.iter().map(|v| v / norm).collect();
        for _ in 0..2 {
            for b in &self.basis {
                let c = dot(&r, b);
                r.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let rest = dot(&r, &r).sqrt();
        if rest <= 1e-9 {
            return false;
        }
        r.iter_mut().for_each(|v| *v /= rest);
        self.basis.push(r);
        true
    }
}

/// Replaces the relaxation optimum by a vertex of the sparsification LP.
pub fn sparsify(inst: &Instance, cp: &CpResult, cfg: &SparsifyConfig) -> Result<SparseSolution> {
    let n = inst.n();
    let d = inst.d();
    let bound = fractional_bound(d);
    let relax = Relaxation::new(inst, Some(cp.b_z))?;
    let f_before = relax.inner(&cp.x, Some(&cp.z), cfg.inner_tol)?.value;

    if count_fractional(&cp.x, cfg.frac_eps) == 0 {
        return Ok(SparseSolution {
            x_hat: cp.x.clone(),
            fractional_support: Vec::new(),
            bound,
            f_before,
            f_after: f_before,
            value_check: 0.0,
            matrix_residual: 0.0,
            decomposition_error: 0.0,
            certificate: None,
            lp_support: cp.x.iter().filter(|v| **v > EPS_ZERO).count(),
            seed: cfg.seed,
            reseeds: 0,
            rejected: Vec::new(),
        });
    }

    let lp = build_lp(inst, &cp.x, &cp.z, cfg.kkt_tol)?;
    let mut rejected: Vec<String> = Vec::new();
    for attempt in 0..=cfg.max_reseeds {
        let seed = seed::derive(cfg.seed, &format!("sparsify/{attempt}"));
        let point = match lp.extreme_point(seed) {
            Ok(p) => p,
            Err(Error::Sparsification(msg)) => {
                rejected.push(format!("seed {seed}: {msg}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let raw = point.x;
        let support_size = positive_support(&raw).len();
        let certified = if support_size <= cfg.certify_limit {
            lp.vertex_near(&raw, cfg.eps_lp)?
        } else {
            None
        };
        // Without a certificate the solver's basic solution is used as is;
        // the fractional bound and value checks below still apply.
        let (local, certificate) = match certified {
            Some((x, cert)) => (x, Some(cert)),
            None => {
                let residual = lp.residual(&raw)?.max(point.decomposition_residual);
                if residual > 1e-6 {
                    rejected.push(format!("seed {seed}: no certified vertex and LP residual {residual:.3e}"));
                    continue;
                }
                (raw, None)
            }
        };
        let mut x_hat = vec![0.0; n];
        for (j, &i) in lp.support.iter().enumerate() {
            x_hat[i] = local[j].max(0.0);
        }
        let fractional_support: Vec<usize> = (0..n)
            .filter(|&i| x_hat[i] > cfg.frac_eps && x_hat[i] < 1.0 - cfg.frac_eps)
            .collect();
        if fractional_support.len() > bound {
            rejected.push(format!(
                "seed {seed}: {} fractional coordinates exceed the bound {bound}",
                fractional_support.len()
            ));
            continue;
        }
        let after = numerics::assemble_x(&inst.vectors, &x_hat, &cp.z);
        let scale = lp.target.amax().max(f64::MIN_POSITIVE);
        let matrix_residual = (&after - &lp.target).amax() / scale;
        let f_after = relax.inner(&x_hat, Some(&cp.z), cfg.inner_tol)?.value;
        let value_check = (f_after - f_before).abs() / f_before.abs().max(1.0);
        if matrix_residual > cfg.eps_lp || value_check > cfg.value_tol {
            rejected.push(format!(
                "seed {seed}: value not preserved (matrix residual {matrix_residual:.3e}, relative value change {value_check:.3e})"
            ));
            continue;
        }
        return Ok(SparseSolution {
            x_hat,
            fractional_support,
            bound,
            f_before,
            f_after,
            value_check,
            matrix_residual,
            decomposition_error: lp.decomposition_error,
            certificate,
            lp_support: lp.len(),
            seed,
            reseeds: attempt,
            rejected,
        });
    }
    Err(Error::Sparsification(format!(
        "no acceptable extreme point after {} reseeds: {}",
        cfg.max_reseeds,
        rejected.join("; ")
    )))
}
