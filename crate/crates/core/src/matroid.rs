//! Oracle-based matroids, derived constructions, and the combinatorial
//! subroutines the solvers need (greedy, intersection, polytope membership).
//!
//! Element sets are slices of distinct element ids. Ties are always broken
//! toward the lowest id so every greedy output is reproducible.

use serde::{Deserialize, Serialize};

use crate::colgen::{Column, Family, Master};
use crate::{Error, Result};

/// Largest support [`base_polytope_membership`] enumerates; larger ones go through an LP.
pub const DEFAULT_MEMBERSHIP_LIMIT: usize = 22;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "params", rename_all = "snake_case")]
pub enum Matroid {
    Uniform {
        n: usize,
        rank: usize,
    },
    /// `part_of[i]` names the part of element `i`.
    Partition {
        part_of: Vec<usize>,
        capacities: Vec<usize>,
    },
    /// Element `i` is edge `edges[i]`; independent sets are forests.
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    /// Element `i` is column `vectors[i]`.
    Linear {
        vectors: Vec<Vec<f64>>,
    },
    ExplicitBases {
        n: usize,
        bases: Vec<Vec<usize>>,
    },
    Truncation {
        base: Box<Matroid>,
        rank: usize,
    },
    /// Element `j` is `elements[j]` of the base matroid.
    Restriction {
        base: Box<Matroid>,
        elements: Vec<usize>,
    },
    /// Ground set is the base ground set minus `contracted`, reindexed in order.
    Contraction {
        base: Box<Matroid>,
        contracted: Vec<usize>,
    },
    /// Element `(i, c)` has id `i * copies + c`. A set is independent when it
    /// holds at most one copy of each element and its projection is independent.
    Parallel {
        base: Box<Matroid>,
        copies: usize,
    },
    /// Bases are the bases of `base` whose weight is within `eps_tight` of the minimum.
    MinWeightBases {
        base: Box<Matroid>,
        weights: Vec<f64>,
        min_weight: f64,
        eps_tight: f64,
    },
}

/// Outcome of a base polytope membership test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Membership {
    Inside,
    Negative { element: usize, value: f64 },
    /// `x(set) - r(set) = excess`, the largest over all subsets.
    Violated { set: Vec<usize>, excess: f64 },
    /// Total mass differs from the rank.
    Deficient { total: f64, rank: usize },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside)
    }
}

impl Matroid {
    pub fn uniform(n: usize, rank: usize) -> Self {
        Matroid::Uniform { n, rank }
    }

    pub fn partition(part_of: Vec<usize>, capacities: Vec<usize>) -> Self {
        Matroid::Partition {
            part_of,
            capacities,
        }
    }

    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        Matroid::Graphic { vertices, edges }
    }

    pub fn linear(vectors: Vec<Vec<f64>>) -> Self {
        Matroid::Linear { vectors }
    }

    pub fn explicit_bases(n: usize, bases: Vec<Vec<usize>>) -> Self {
        let mut bases: Vec<Vec<usize>> = bases
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        bases.sort();
        bases.dedup();
        Matroid::ExplicitBases { n, bases }
    }

    pub fn truncate(&self, rank: usize) -> Self {
        Matroid::Truncation {
            base: Box::new(self.clone()),
            rank,
        }
    }

    pub fn restrict(&self, elements: &[usize]) -> Self {
        Matroid::Restriction {
            base: Box::new(self.clone()),
            elements: elements.to_vec(),
        }
    }

    pub fn contract(&self, set: &[usize]) -> Self {
        let mut contracted = set.to_vec();
        contracted.sort_unstable();
        contracted.dedup();
        Matroid::Contraction {
            base: Box::new(self.clone()),
            contracted,
        }
    }

    /// Parallel extension with `copies` copies of every element.
    pub fn parallel(&self, copies: usize) -> Self {
        Matroid::Parallel {
            base: Box::new(self.clone()),
            copies,
        }
    }

    /// Two parallel copies of every element.
    pub fn double(&self) -> Self {
        self.parallel(2)
    }

    /// Checks internal consistency of the description.
    pub fn validate(&self) -> Result<()> {
        match self {
            Matroid::Uniform { .. } => Ok(()),
            Matroid::Partition {
                part_of,
                capacities,
            } => {
                if let Some(&p) = part_of.iter().find(|&&p| p >= capacities.len()) {
                    return Err(Error::input(format!("part id {p} has no capacity")));
                }
                Ok(())
            }
            Matroid::Graphic { vertices, edges } => {
                if let Some(e) = edges.iter().find(|e| e.0 >= *vertices || e.1 >= *vertices) {
                    return Err(Error::input(format!("edge {e:?} leaves the vertex set")));
                }
                Ok(())
            }
            Matroid::Linear { vectors } => {
                let dim = vectors.first().map_or(0, |v| v.len());
                if vectors.iter().any(|v| v.len() != dim) {
                    return Err(Error::input("linear matroid columns differ in length"));
                }
                if vectors.iter().flatten().any(|a| !a.is_finite()) {
                    return Err(Error::input("linear matroid has non-finite entries"));
                }
                Ok(())
            }
            Matroid::ExplicitBases { n, bases } => {
                if bases.is_empty() {
                    return Err(Error::input("explicit_bases needs at least one basis"));
                }
                let r = bases[0].len();
                for b in bases {
                    if b.len() != r {
                        return Err(Error::input("explicit bases differ in size"));
                    }
                    if b.iter().any(|&e| e >= *n) {
                        return Err(Error::input("explicit basis element out of range"));
                    }
                    if b.windows(2).any(|w| w[0] == w[1]) {
                        return Err(Error::input("explicit basis repeats an element"));
                    }
                }
                Ok(())
            }
            Matroid::Truncation { base, .. } => base.validate(),
            Matroid::Restriction { base, elements } => {
                base.validate()?;
                let n = base.ground_size();
                let mut seen = vec![false; n];
                for &e in elements {
                    if e >= n || seen[e] {
                        return Err(Error::input("restriction elements must be distinct ids"));
                    }
                    seen[e] = true;
                }
                Ok(())
            }
            Matroid::Contraction { base, contracted } => {
                base.validate()?;
                if contracted.iter().any(|&e| e >= base.ground_size()) {
                    return Err(Error::input("contracted element out of range"));
                }
                Ok(())
            }
            Matroid::Parallel { base, copies } => {
                if *copies == 0 {
                    return Err(Error::input("parallel extension needs at least one copy"));
                }
                base.validate()
            }
            Matroid::MinWeightBases { base, weights, .. } => {
                base.validate()?;
                if weights.len() != base.ground_size() {
                    return Err(Error::input("weight vector length mismatch"));
                }
                Ok(())
            }
        }
    }

    pub fn ground_size(&self) -> usize {
        match self {
            Matroid::Uniform { n, .. } => *n,
            Matroid::Partition { part_of, .. } => part_of.len(),
            Matroid::Graphic { edges, .. } => edges.len(),
            Matroid::Linear { vectors } => vectors.len(),
            Matroid::ExplicitBases { n, .. } => *n,
            Matroid::Truncation { base, .. } => base.ground_size(),
            Matroid::Restriction { elements, .. } => elements.len(),
            Matroid::Contraction { base, contracted } => base.ground_size() - contracted.len(),
            Matroid::Parallel { base, copies } => base.ground_size() * copies,
            Matroid::MinWeightBases { base, .. } => base.ground_size(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Matroid::Uniform { .. } => "uniform",
            Matroid::Partition { .. } => "partition",
            Matroid::Graphic { .. } => "graphic",
            Matroid::Linear { .. } => "linear",
            Matroid::ExplicitBases { .. } => "explicit_bases",
            Matroid::Truncation { .. } => "truncation",
            Matroid::Restriction { .. } => "restriction",
            Matroid::Contraction { .. } => "contraction",
            Matroid::Parallel { .. } => "parallel",
            Matroid::MinWeightBases { .. } => "min_weight_bases",
        }
    }

    /// Parts and capacities when the matroid is a partition matroid
    /// (a uniform matroid counts as a single part).
    pub fn partition_structure(&self) -> Option<(Vec<Vec<usize>>, Vec<usize>)> {
        match self {
            Matroid::Uniform { n, rank } => Some((vec![(0..*n).collect()], vec![*rank.min(n)])),
            Matroid::Partition {
                part_of,
                capacities,
            } => {
                let mut parts = vec![Vec::new(); capacities.len()];
                for (i, &p) in part_of.iter().enumerate() {
                    parts[p].push(i);
                }
                let caps = parts
                    .iter()
                    .zip(capacities)
                    .map(|(p, &c)| c.min(p.len()))
                    .collect();
                Some((parts, caps))
            }
            _ => None,
        }
    }

    /// Checked independence test.
    pub fn is_independent(&self, s: &[usize]) -> Result<bool> {
        self.check_set(s)?;
        Ok(self.indep(s))
    }

    /// Checked rank.
    pub fn rank(&self, s: &[usize]) -> Result<usize> {
        self.check_set(s)?;
        Ok(self.rank_of(s))
    }

    fn check_set(&self, s: &[usize]) -> Result<()> {
        let n = self.ground_size();
        let mut seen = vec![false; n];
        for &e in s {
            if e >= n {
                return Err(Error::input(format!("element {e} outside ground set of size {n}")));
            }
            if seen[e] {
                return Err(Error::input(format!("element {e} repeated")));
            }
            seen[e] = true;
        }
        Ok(())
    }

    /// Independence test without range checks; `s` must hold distinct valid ids.
    pub fn indep(&self, s: &[usize]) -> bool {
        match self {
            Matroid::Uniform { rank, .. } => s.len() <= *rank,
            Matroid::Partition {
                part_of,
                capacities,
            } => {
                let mut count = vec![0usize; capacities.len()];
                for &e in s {
                    let p = part_of[e];
                    count[p] += 1;
                    if count[p] > capacities[p] {
                        return false;
                    }
                }
                true
            }
            Matroid::Graphic { vertices, edges } => {
                let mut uf = UnionFind::new(*vertices);
                s.iter().all(|&e| uf.union(edges[e].0, edges[e].1))
            }
            Matroid::Linear { vectors } => {
                let cols: Vec<&[f64]> = s.iter().map(|&e| vectors[e].as_slice()).collect();
                column_rank(&cols) == s.len()
            }
            Matroid::ExplicitBases { bases, .. } => bases
                .iter()
                .any(|b| s.iter().all(|e| b.binary_search(e).is_ok())),
            Matroid::Truncation { base, rank } => s.len() <= *rank && base.indep(s),
            Matroid::Restriction { base, elements } => {
                let mapped: Vec<usize> = s.iter().map(|&e| elements[e]).collect();
                base.indep(&mapped)
            }
            Matroid::Contraction { base, contracted } => {
                let remaining = remaining_after(base.ground_size(), contracted);
                let mut set = base.greedy_subset(contracted);
                set.extend(s.iter().map(|&e| remaining[e]));
                base.indep(&set)
            }
            Matroid::Parallel { base, copies } => {
                let mut proj: Vec<usize> = s.iter().map(|&e| e / copies).collect();
                proj.sort_unstable();
                if proj.windows(2).any(|w| w[0] == w[1]) {
                    return false;
                }
                base.indep(&proj)
            }
            Matroid::MinWeightBases {
                base,
                weights,
                min_weight,
                eps_tight,
            } => {
                if !base.indep(s) {
                    return false;
                }
                let (_, w) = base.min_weight_completion(s, weights);
                w <= min_weight + eps_tight
            }
        }
    }

    /// Rank without range checks.
    pub fn rank_of(&self, s: &[usize]) -> usize {
        match self {
            Matroid::Uniform { rank, .. } => s.len().min(*rank),
            Matroid::Partition {
                part_of,
                capacities,
            } => {
                let mut count = vec![0usize; capacities.len()];
                for &e in s {
                    count[part_of[e]] += 1;
                }
                count.iter().zip(capacities).map(|(c, b)| (*c).min(*b)).sum()
            }
            Matroid::Graphic { vertices, edges } => {
                let mut uf = UnionFind::new(*vertices);
                s.iter().filter(|&&e| uf.union(edges[e].0, edges[e].1)).count()
            }
            Matroid::Truncation { base, rank } => base.rank_of(s).min(*rank),
            _ => self.greedy_subset(s).len(),
        }
    }

    /// Rank of the whole ground set.
    pub fn full_rank(&self) -> usize {
        match self {
            Matroid::Uniform { n, rank } => (*rank).min(*n),
            Matroid::Parallel { base, .. } => base.full_rank(),
            Matroid::Truncation { base, rank } => base.full_rank().min(*rank),
            Matroid::ExplicitBases { bases, .. } => bases[0].len(),
            _ => {
                let all: Vec<usize> = (0..self.ground_size()).collect();
                self.rank_of(&all)
            }
        }
    }

    /// Maximal independent subset of `s`, scanning `s` in the given order.
    pub fn greedy_subset(&self, s: &[usize]) -> Vec<usize> {
        let mut t = Vec::new();
        for &e in s {
            t.push(e);
            if !self.indep(&t) {
                t.pop();
            }
        }
        t
    }

    /// Greedy scan of `order`, stopping once `cap` elements are taken.
    fn greedy_capped(&self, start: &[usize], order: &[usize], cap: usize) -> Vec<usize> {
        let mut t = start.to_vec();
        for &e in order {
            if t.len() >= cap {
                break;
            }
            if t.contains(&e) {
                continue;
            }
            t.push(e);
            if !self.indep(&t) {
                t.pop();
            }
        }
        t
    }

    /// Cheapest basis containing the independent set `s`, and its weight.
    pub fn min_weight_completion(&self, s: &[usize], weights: &[f64]) -> (Vec<usize>, f64) {
        let order = ascending_order(weights);
        let r = self.full_rank();
        let mut t = self.greedy_capped(s, &order, r);
        t.sort_unstable();
        let w = t.iter().map(|&e| weights[e]).sum();
        (t, w)
    }

    /// Basis maximizing `w(S)`; ties go to the lowest id.
    pub fn max_weight_basis(&self, w: &[f64]) -> Result<Vec<usize>> {
        check_weights(self, w)?;
        let mut order: Vec<usize> = (0..w.len()).collect();
        order.sort_by(|&a, &b| w[b].total_cmp(&w[a]).then(a.cmp(&b)));
        let mut t = self.greedy_capped(&[], &order, usize::MAX);
        t.sort_unstable();
        Ok(t)
    }
}

fn check_weights(m: &Matroid, w: &[f64]) -> Result<()> {
    if w.len() != m.ground_size() {
        return Err(Error::input(format!(
            "weight vector has length {}, ground set has {}",
            w.len(),
            m.ground_size()
        )));
    }
    if w.iter().any(|a| !a.is_finite()) {
        return Err(Error::input("weights must be finite"));
    }
    Ok(())
}

fn ascending_order(w: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_by(|&a, &b| w[a].total_cmp(&w[b]).then(a.cmp(&b)));
    order
}

fn remaining_after(n: usize, removed: &[usize]) -> Vec<usize> {
    (0..n).filter(|e| removed.binary_search(e).is_err()).collect()
}

/// Member of `I_d(M)` minimizing `z(S)`, found greedily on the rank-`d` truncation.
pub fn min_weight_size_d_independent(m: &Matroid, z: &[f64], d: usize) -> Result<(Vec<usize>, f64)> {
    check_weights(m, z)?;
    let order = ascending_order(z);
    let mut t = m.greedy_capped(&[], &order, d);
    if t.len() < d {
        return Err(Error::Infeasible(format!(
            "matroid rank {} is below d = {d}",
            t.len()
        )));
    }
    t.sort_unstable();
    let w = t.iter().map(|&e| z[e]).sum();
    Ok((t, w))
}

/// Matroid whose bases are the minimum `z`-weight bases of `m_d`, up to `eps_tight`
/// (default `1e-6 * (1 + |min|)`).
pub fn min_weight_basis_matroid(m_d: &Matroid, z: &[f64], eps_tight: Option<f64>) -> Result<Matroid> {
    check_weights(m_d, z)?;
    let (_, min_weight) = m_d.min_weight_completion(&[], z);
    let eps_tight = eps_tight.unwrap_or(1e-6 * (1.0 + min_weight.abs()));
    Ok(Matroid::MinWeightBases {
        base: Box::new(m_d.clone()),
        weights: z.to_vec(),
        min_weight,
        eps_tight,
    })
}

/// Two parallel copies of every element (ids `2i` and `2i + 1`).
pub fn double(m: &Matroid) -> Matroid {
    m.double()
}

/// All independent sets of exactly `size` elements, lexicographically.
pub fn independent_sets_of_size(m: &Matroid, size: usize, limit: usize) -> Result<Vec<Vec<usize>>> {
    fn go(
        m: &Matroid,
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        if cur.len() == size {
            if out.len() >= limit {
                return Err(Error::Scale {
                    what: "independent set enumeration",
                    size: out.len() + 1,
                    limit,
                });
            }
            out.push(cur.clone());
            return Ok(());
        }
        let n = m.ground_size();
        for e in start..n {
            if n - e < size - cur.len() {
                break;
            }
            cur.push(e);
            if m.indep(cur) {
                go(m, size, e + 1, cur, out, limit)?;
            }
            cur.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(m, size, 0, &mut Vec::new(), &mut out, limit)?;
    Ok(out)
}

/// Maximum-cardinality common independent set by shortest augmenting paths.
pub fn matroid_intersection(m1: &Matroid, m2: &Matroid) -> Result<Vec<usize>> {
    let n = m1.ground_size();
    if m2.ground_size() != n {
        return Err(Error::input("matroid intersection needs a common ground set"));
    }
    let mut current: Vec<usize> = Vec::new();
    loop {
        let in_set: Vec<bool> = (0..n).map(|e| current.contains(&e)).collect();
        let outside: Vec<usize> = (0..n).filter(|&e| !in_set[e]).collect();
        let with = |e: usize| {
            let mut s = current.clone();
            s.push(e);
            s
        };
        let swap = |out: usize, inn: usize| {
            let mut s: Vec<usize> = current.iter().copied().filter(|&e| e != out).collect();
            s.push(inn);
            s
        };
        let sources: Vec<usize> = outside.iter().copied().filter(|&e| m1.indep(&with(e))).collect();
        let is_sink: Vec<bool> = (0..n).map(|e| !in_set[e] && m2.indep(&with(e))).collect();

        // BFS over the exchange graph: outside -> inside when the swap stays
        // independent in m2, inside -> outside when it stays independent in m1.
        let mut prev: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        for &s in &sources {
            seen[s] = true;
            queue.push_back(s);
        }
        let mut end = None;
        while let Some(u) = queue.pop_front() {
            if !in_set[u] && is_sink[u] {
                end = Some(u);
                break;
            }
            for v in 0..n {
                if seen[v] || in_set[u] == in_set[v] {
                    continue;
                }
                let ok = if in_set[u] {
                    m1.indep(&swap(u, v))
                } else {
                    m2.indep(&swap(v, u))
                };
                if ok {
                    seen[v] = true;
                    prev[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        let Some(mut v) = end else { break };
        let mut path = vec![v];
        while let Some(u) = prev[v] {
            path.push(u);
            v = u;
        }
        for e in path {
            if let Some(pos) = current.iter().position(|&c| c == e) {
                current.remove(pos);
            } else {
                current.push(e);
            }
        }
    }
    current.sort_unstable();
    Ok(current)
}

/// Tests `x` against the base polytope. Small supports are checked subset by
/// subset, larger ones by column generation.
pub fn base_polytope_membership(m: &Matroid, x: &[f64], eps: f64) -> Result<Membership> {
    base_polytope_membership_with_limit(m, x, eps, DEFAULT_MEMBERSHIP_LIMIT)
}

pub fn base_polytope_membership_with_limit(
    m: &Matroid,
    x: &[f64],
    eps: f64,
    limit: usize,
) -> Result<Membership> {
    if x.len() != m.ground_size() {
        return Err(Error::input("point length differs from ground set size"));
    }
    if let Some((e, &v)) = x.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < -eps) {
        return Ok(Membership::Negative { element: e, value: v });
    }
    // Zero coordinates never raise x(S) - r(S), so only the support matters.
    let support: Vec<usize> = (0..x.len()).filter(|&i| x[i] > 0.0).collect();
    let (excess, set) = if support.len() > limit {
        max_rank_violation_lp(m, x, &support)?
    } else {
        max_rank_violation(m, x, &support)
    };
    if excess > eps {
        return Ok(Membership::Violated { set, excess });
    }
    let total: f64 = x.iter().sum();
    let rank = m.full_rank();
    if (total - rank as f64).abs() > eps {
        return Ok(Membership::Deficient { total, rank });
    }
    Ok(Membership::Inside)
}

/// Largest `x(S) - r(S)` over subsets of `support`.
pub(crate) fn max_rank_violation(m: &Matroid, x: &[f64], support: &[usize]) -> (f64, Vec<usize>) {
    let mut best = (0.0, Vec::new());
    for_each_subset_rank(m, support, |set, rank| {
        let excess = set.iter().map(|&e| x[e]).sum::<f64>() - rank as f64;
        if excess > best.0 {
            best = (excess, set.to_vec());
        }
    });
    best
}

/// Same quantity as [`max_rank_violation`] without enumeration. The LP
/// `max { y(E) : y in P(M), y <= x }` equals `min_S r(S) + x(E - S)`, so the
/// violation is `x(E)` minus its value. Columns are bases of `M|support`.
/// The witness set is the best level set of the optimal duals.
pub(crate) fn max_rank_violation_lp(m: &Matroid, x: &[f64], support: &[usize]) -> Result<(f64, Vec<usize>)> {
    let k = support.len();
    let sub = m.restrict(support);
    // Rows: u_e + s_e = x_e, then u_e - cover_e + t_e = 0, then sum lambda = 1.
    let cap = |e: usize| e;
    let link = |e: usize| k + e;
    let conv = 2 * k;
    let mut rhs = vec![0.0; 2 * k + 1];
    for (j, &e) in support.iter().enumerate() {
        rhs[cap(j)] = x[e];
    }
    rhs[conv] = 1.0;
    let mut fixed = Vec::with_capacity(3 * k);
    for j in 0..k {
        fixed.push(Column { cost: -1.0, entries: vec![(cap(j), 1.0), (link(j), 1.0)] });
    }
    for j in 0..k {
        fixed.push(Column { cost: 0.0, entries: vec![(cap(j), 1.0)] });
        fixed.push(Column { cost: 0.0, entries: vec![(link(j), 1.0)] });
    }
    let column = |b: &[usize]| Column {
        cost: 0.0,
        entries: b.iter().map(|&j| (link(j), -1.0)).chain([(conv, 1.0)]).collect(),
    };
    let start = sub.max_weight_basis(&vec![0.0; k])?;
    let family = Family {
        columns: vec![(start.clone(), column(&start))],
        price: Box::new(|duals: &[f64]| {
            let w: Vec<f64> = (0..k).map(|j| -duals[link(j)]).collect();
            let b = sub.max_weight_basis(&w)?;
            Ok(vec![(b.clone(), column(&b))])
        }),
    };
    let sol = Master { rhs, fixed, families: vec![family] }.solve()?;
    let covered: f64 = sol.fixed[..k].iter().sum();
    let total: f64 = support.iter().map(|&e| x[e]).sum();
    // Some level set of the coverage duals attains the minimum.
    let beta: Vec<f64> = (0..k).map(|j| sol.duals[link(j)]).collect();
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for sign in [1.0, -1.0] {
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| (sign * beta[b]).total_cmp(&(sign * beta[a])));
        let mut set = Vec::with_capacity(k);
        let mut mass = 0.0;
        for &j in &order {
            set.push(support[j]);
            mass += x[support[j]];
            let excess = mass - m.rank_of(&set) as f64;
            if excess > best.0 {
                best = (excess, set.clone());
            }
        }
    }
    best.1.sort_unstable();
    Ok(((total - covered).max(0.0), best.1))
}

/// Calls `visit(S, r(S))` for every nonempty subset of `support`, with one
/// independence call per subset: the greedy basis of `S + e` extends the one of `S`.
pub(crate) fn for_each_subset_rank(m: &Matroid, support: &[usize], mut visit: impl FnMut(&[usize], usize)) {
    fn go(
        m: &Matroid,
        u: &[usize],
        start: usize,
        set: &mut Vec<usize>,
        basis: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize], usize),
    ) {
        for j in start..u.len() {
            let e = u[j];
            set.push(e);
            basis.push(e);
            let grew = m.indep(basis);
            if !grew {
                basis.pop();
            }
            visit(set, basis.len());
            go(m, u, j + 1, set, basis, visit);
            if grew {
                basis.pop();
            }
            set.pop();
        }
    }
    go(m, support, 0, &mut Vec::new(), &mut Vec::new(), &mut visit);
}

/// Numerical rank of a list of equal-length columns.
pub(crate) fn column_rank(cols: &[&[f64]]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let dim = cols[0].len();
    let scale = cols
        .iter()
        .flat_map(|c| c.iter())
        .fold(0.0f64, |a, b| a.max(b.abs()));
    if scale == 0.0 {
        return 0;
    }
    let tol = 1e-10 * scale;
    let mut rows: Vec<Vec<f64>> = cols.iter().map(|c| c.to_vec()).collect();
    let mut rank = 0;
    for col in 0..dim {
        let piv = (rank..rows.len()).max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()));
        let Some(p) = piv else { break };
        if rows[p][col].abs() <= tol {
            continue;
        }
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            let f = rows[r][col] / rows[rank][col];
            for c in col..dim {
                rows[r][c] -= f * rows[rank][c];
            }
        }
        rank += 1;
    }
    rank
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// False when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
