//! Problem instances, application generators, and preprocessing.

use itertools::Itertools;
use rand::seq::index::sample;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::matroid::{self, Matroid};
use crate::numerics::{self, VectorSet};
use crate::{seed, Error, Result};

/// Coordinates at or below this are dropped by support restriction.
pub const EPS_ZERO: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub vectors: VectorSet,
    pub matroid: Matroid,
    pub metadata: Metadata,
    #[serde(skip)]
    k: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub generator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub params: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preprocessing: Option<Preprocessing>,
}

/// Record of the doubling + perturbation step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Preprocessing {
    pub sigma: f64,
    pub seed: u64,
    pub copies: usize,
    pub original_n: usize,
    /// `Some(true)` when every size-d subset was checked, `None` when only sampled.
    pub general_position: Option<bool>,
    pub checked_subsets: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbationParams {
    pub sigma: f64,
    pub seed: u64,
}

impl PerturbationParams {
    /// Default noise scale `delta / (d^2 n max|v|)` with `delta = 1e-6 * (greedy basis value or 1)`.
    pub fn auto(inst: &Instance, seed: u64) -> Self {
        PerturbationParams {
            sigma: default_sigma(inst),
            seed,
        }
    }
}

impl Instance {
    pub fn new(vectors: VectorSet, matroid: Matroid, metadata: Metadata) -> Result<Self> {
        matroid.validate()?;
        if vectors.n() != matroid.ground_size() {
            return Err(Error::input(format!(
                "{} vectors but the matroid has {} elements",
                vectors.n(),
                matroid.ground_size()
            )));
        }
        let k = matroid.full_rank();
        if k == 0 {
            return Err(Error::input("matroid has rank 0"));
        }
        Ok(Instance {
            vectors,
            matroid,
            metadata,
            k,
        })
    }

    pub fn d(&self) -> usize {
        self.vectors.d()
    }

    pub fn n(&self) -> usize {
        self.vectors.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `det(sum_{i in S} v_i v_i^T)` for any set `S`.
    pub fn objective(&self, s: &[usize]) -> f64 {
        let mut w = vec![0.0; self.n()];
        for &i in s {
            w[i] = 1.0;
        }
        numerics::weighted_gram(&self.vectors, &w).determinant()
    }

    /// Number of parallel copies introduced by preprocessing (1 if none).
    pub fn copies(&self) -> usize {
        self.metadata.preprocessing.as_ref().map_or(1, |p| p.copies)
    }

    /// Re-derives cached fields after deserialization.
    pub fn revalidate(self) -> Result<Self> {
        Instance::new(self.vectors, self.matroid, self.metadata)
    }
}

/// Gaussian vectors under a given matroid.
pub fn gen_experimental_design(n: usize, d: usize, matroid: Matroid, seed: u64) -> Result<Instance> {
    if n < d {
        return Err(Error::input(format!("need n >= d, got n = {n}, d = {d}")));
    }
    if matroid.ground_size() != n {
        return Err(Error::input("matroid ground set size differs from n"));
    }
    let mut rng = seed::rng(seed);
    let vecs: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    Instance::new(
        VectorSet::new(d, &vecs)?,
        matroid,
        Metadata {
            generator: "design".into(),
            seed: Some(seed),
            params: serde_json::json!({ "n": n, "d": d }),
            preprocessing: None,
        },
    )
}

/// Nash social welfare: agent `i` receiving good `j` is element `j * d + i`
/// with vector `sqrt(u_i(j)) e_i`. `utilities[i][j]` is agent `i`'s value for good `j`.
/// Without `extra`, each good goes to exactly one agent (a partition matroid);
/// with it, the set of allocated goods must also be a basis of `extra`.
pub fn gen_nsw(utilities: &[Vec<f64>], extra: Option<Matroid>) -> Result<Instance> {
    let d = utilities.len();
    if d == 0 {
        return Err(Error::input("need at least one agent"));
    }
    let m = utilities[0].len();
    if m == 0 || utilities.iter().any(|r| r.len() != m) {
        return Err(Error::input("utility rows must have equal, positive length"));
    }
    if utilities.iter().flatten().any(|u| !(u.is_finite() && *u >= 0.0)) {
        return Err(Error::input("utilities must be finite and non-negative"));
    }
    if let Some(j) = (0..m).find(|&j| utilities.iter().all(|r| r[j] == 0.0)) {
        return Err(Error::Degenerate(format!("good {j} has zero utility for every agent")));
    }
    let mut vecs = Vec::with_capacity(d * m);
    for j in 0..m {
        for (i, row) in utilities.iter().enumerate() {
            let mut v = vec![0.0; d];
            v[i] = row[j].sqrt();
            vecs.push(v);
        }
    }
    let matroid = match extra {
        None => Matroid::partition((0..m).flat_map(|j| std::iter::repeat(j).take(d)).collect(), vec![1; m]),
        Some(goods) => {
            if goods.ground_size() != m {
                return Err(Error::input("extra matroid must live on the goods"));
            }
            goods.parallel(d)
        }
    };
    Instance::new(
        VectorSet::new(d, &vecs)?,
        matroid,
        Metadata {
            generator: "nsw".into(),
            seed: None,
            params: serde_json::json!({ "agents": d, "goods": m }),
            preprocessing: None,
        },
    )
}

/// Network design: edge `(i, j)` with weight `w` becomes `sqrt(w) (e_i - e_j)`
/// with the last vertex's coordinate dropped, so a spanning tree's objective
/// is its weighted reduced-Laplacian determinant. Defaults to the graphic matroid.
pub fn gen_network_design(
    vertices: usize,
    edges: &[(usize, usize)],
    weights: &[f64],
    matroid: Option<Matroid>,
) -> Result<Instance> {
    if vertices < 2 {
        return Err(Error::input("need at least two vertices"));
    }
    if weights.len() != edges.len() {
        return Err(Error::input("one weight per edge required"));
    }
    if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(Error::input("edge weights must be finite and non-negative"));
    }
    let graph = Matroid::graphic(vertices, edges.to_vec());
    graph.validate()?;
    if graph.full_rank() != vertices - 1 {
        return Err(Error::input("graph is disconnected"));
    }
    let d = vertices - 1;
    let vecs: Vec<Vec<f64>> = edges
        .iter()
        .zip(weights)
        .map(|(&(a, b), &w)| {
            let mut v = vec![0.0; d];
            let s = w.sqrt();
            if a < d {
                v[a] += s;
            }
            if b < d {
                v[b] -= s;
            }
            v
        })
        .collect();
    Instance::new(
        VectorSet::new(d, &vecs)?,
        matroid.unwrap_or(graph),
        Metadata {
            generator: "network".into(),
            seed: None,
            params: serde_json::json!({ "vertices": vertices, "edges": edges, "weights": weights }),
            preprocessing: None,
        },
    )
}

/// Hard instance for oblivious rounding, with its fully fractional point.
#[derive(Clone, Debug)]
pub struct Adversarial {
    pub instance: Instance,
    pub x_star: Vec<f64>,
    /// 0-based index `i` of the vertex `a_i` whose two edges carry the vectors.
    pub distinguished: usize,
}

/// Graph on `a_0..a_{m-1}, b, c` with edges `a_i b` (id `2i`) and `a_i c`
/// (id `2i + 1`). Only the two edges at `a_distinguished` carry nonzero vectors,
/// `(2, 0)` and `(0, 2)`. The point `x*` puts `(m + 1) / (2m)` on every edge.
pub fn gen_adversarial(m: usize, distinguished: usize) -> Result<Adversarial> {
    if m < 2 {
        return Err(Error::input("adversarial family needs m >= 2"));
    }
    if distinguished >= m {
        return Err(Error::input("distinguished index out of range"));
    }
    let (b, c) = (m, m + 1);
    let edges: Vec<(usize, usize)> = (0..m).flat_map(|i| [(i, b), (i, c)]).collect();
    let mut vecs = vec![vec![0.0, 0.0]; 2 * m];
    vecs[2 * distinguished] = vec![2.0, 0.0];
    vecs[2 * distinguished + 1] = vec![0.0, 2.0];
    let instance = Instance::new(
        VectorSet::new(2, &vecs)?,
        Matroid::graphic(m + 2, edges),
        Metadata {
            generator: "adversarial".into(),
            seed: None,
            params: serde_json::json!({ "m": m, "distinguished": distinguished }),
            preprocessing: None,
        },
    )?;
    Ok(Adversarial {
        instance,
        x_star: vec![(m + 1) as f64 / (2 * m) as f64; 2 * m],
        distinguished,
    })
}

pub fn default_sigma(inst: &Instance) -> f64 {
    let norms: Vec<f64> = (0..inst.n())
        .map(|i| inst.vectors.get(i).iter().map(|a| a * a).sum())
        .collect();
    let estimate = inst
        .matroid
        .max_weight_basis(&norms)
        .map(|b| inst.objective(&b))
        .ok()
        .filter(|v| v.is_finite() && *v > 0.0)
        .unwrap_or(1.0);
    let delta = 1e-6 * estimate;
    let d = inst.d() as f64;
    let max_norm = inst.vectors.max_norm();
    let max_norm = if max_norm > 0.0 { max_norm } else { 1.0 };
    delta / (d * d * inst.n() as f64 * max_norm)
}

/// Doubles the matroid, duplicates every vector, and adds i.i.d. `N(0, sigma^2)` noise.
pub fn preprocess(inst: &Instance, params: &PerturbationParams) -> Result<Instance> {
    if !(params.sigma > 0.0 && params.sigma.is_finite()) {
        return Err(Error::input("sigma must be positive"));
    }
    let d = inst.d();
    let mut rng = seed::rng(params.seed);
    let mut vecs = Vec::with_capacity(2 * inst.n());
    for i in 0..inst.n() {
        for _ in 0..2 {
            let v: Vec<f64> = inst
                .vectors
                .get(i)
                .iter()
                .map(|a| {
                    let e: f64 = StandardNormal.sample(&mut rng);
                    a + params.sigma * e
                })
                .collect();
            vecs.push(v);
        }
    }
    let vectors = VectorSet::new(d, &vecs)?;
    let (general_position, checked_subsets) = general_position_check(&vectors, &mut rng);
    let mut metadata = inst.metadata.clone();
    metadata.preprocessing = Some(Preprocessing {
        sigma: params.sigma,
        seed: params.seed,
        copies: 2,
        original_n: inst.n(),
        general_position,
        checked_subsets,
    });
    Instance::new(vectors, inst.matroid.double(), metadata)
}

fn general_position_check(v: &VectorSet, rng: &mut impl rand::Rng) -> (Option<bool>, usize) {
    let (n, d) = (v.n(), v.d());
    let independent = |s: &[usize]| v.columns(s).determinant() != 0.0;
    if n <= 20 {
        let mut count = 0;
        for s in (0..n).combinations(d) {
            count += 1;
            if !independent(&s) {
                return (Some(false), count);
            }
        }
        return (Some(true), count);
    }
    const SAMPLES: usize = 2000;
    for count in 1..=SAMPLES {
        let s = sample(rng, n, d).into_vec();
        if !independent(&s) {
            return (Some(false), count);
        }
    }
    (None, SAMPLES)
}

/// True iff some size-d independent set has linearly independent vectors.
pub fn check_opt_positive(inst: &Instance) -> bool {
    let d = inst.d();
    if inst.k() < d {
        return false;
    }
    let linear = Matroid::linear(inst.vectors.to_vecs());
    matroid::matroid_intersection(&inst.matroid.truncate(d), &linear)
        .map(|s| s.len() == d)
        .unwrap_or(false)
}

/// A basis containing `d` elements with linearly independent vectors, if any.
pub fn spanning_basis(inst: &Instance) -> Option<Vec<usize>> {
    let d = inst.d();
    let linear = Matroid::linear(inst.vectors.to_vecs());
    let s = matroid::matroid_intersection(&inst.matroid.truncate(d), &linear).ok()?;
    if s.len() < d {
        return None;
    }
    Some(inst.matroid.min_weight_completion(&s, &vec![0.0; inst.n()]).0)
}

/// Sub-instance on `elements` (kept in the given order).
pub fn restrict(inst: &Instance, elements: &[usize]) -> Result<Instance> {
    let vecs: Vec<Vec<f64>> = elements.iter().map(|&i| inst.vectors.get(i).to_vec()).collect();
    let mut metadata = inst.metadata.clone();
    metadata.preprocessing = None;
    Instance::new(
        VectorSet::new(inst.d(), &vecs)?,
        inst.matroid.restrict(elements),
        metadata,
    )
}

/// Drops elements with `x_i <= EPS_ZERO`; returns the sub-instance and, for each
/// of its elements, the original id.
pub fn restrict_to_support(inst: &Instance, x: &[f64]) -> Result<(Instance, Vec<usize>)> {
    if x.len() != inst.n() {
        return Err(Error::input("point length differs from ground set size"));
    }
    let support: Vec<usize> = (0..x.len()).filter(|&i| x[i] > EPS_ZERO).collect();
    Ok((restrict(inst, &support)?, support))
}

/// Sums the parallel copies of a point on a preprocessed instance back onto
/// the original ground set.
pub fn merge_copies(x: &[f64], copies: usize) -> Vec<f64> {
    x.chunks(copies).map(|c| c.iter().sum()).collect()
}
