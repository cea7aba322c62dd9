//! Small dense linear algebra: weighted Gram matrices, log-determinants,
//! Cauchy–Binet and finite-difference test oracles.

use itertools::Itertools;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// `n` vectors in `R^d`, stored row-major (vector `i` occupies `data[i*d..(i+1)*d]`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorSet {
    d: usize,
    data: Vec<f64>,
}

impl VectorSet {
    pub fn new(d: usize, vectors: &[Vec<f64>]) -> Result<Self> {
        if d == 0 {
            return Err(Error::input("dimension must be positive"));
        }
        if vectors.is_empty() {
            return Err(Error::input("need at least one vector"));
        }
        let mut data = Vec::with_capacity(d * vectors.len());
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != d {
                return Err(Error::input(format!("vector {i} has length {}, expected {d}", v.len())));
            }
            if v.iter().any(|a| !a.is_finite()) {
                return Err(Error::input(format!("vector {i} has a non-finite entry")));
            }
            data.extend_from_slice(v);
        }
        Ok(VectorSet { d, data })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.data.len() / self.d
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn to_vecs(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.d).map(|c| c.to_vec()).collect()
    }

    pub fn max_norm(&self) -> f64 {
        self.data
            .chunks(self.d)
            .map(|c| c.iter().map(|a| a * a).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    /// `d x |S|` matrix with the chosen vectors as columns.
    pub fn columns(&self, s: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(self.d, s.len(), |r, c| self.get(s[c])[r])
    }
}

/// `sum_i weights_i v_i v_i^T`.
pub fn weighted_gram(v: &VectorSet, weights: &[f64]) -> DMatrix<f64> {
    let d = v.d();
    let mut a = DMatrix::zeros(d, d);
    for (i, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let vi = v.get(i);
        for r in 0..d {
            let s = w * vi[r];
            for c in r..d {
                a[(r, c)] += s * vi[c];
            }
        }
    }
    for r in 0..d {
        for c in 0..r {
            a[(r, c)] = a[(c, r)];
        }
    }
    a
}

/// `X(x, z) = sum_i x_i e^{z_i} v_i v_i^T`.
pub fn assemble_x(v: &VectorSet, x: &[f64], z: &[f64]) -> DMatrix<f64> {
    let w: Vec<f64> = x.iter().zip(z).map(|(xi, zi)| xi * zi.exp()).collect();
    weighted_gram(v, &w)
}

/// Log-determinant of a symmetric PSD matrix; `-inf` once a Cholesky pivot
/// drops to `1e-12 * trace` or below.
pub fn logdet(a: &DMatrix<f64>) -> Result<f64> {
    let d = a.nrows();
    if a.ncols() != d {
        return Err(Error::input("logdet needs a square matrix"));
    }
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for r in 0..d {
        for c in 0..r {
            if (a[(r, c)] - a[(c, r)]).abs() > 1e-12 * scale.max(f64::MIN_POSITIVE) {
                return Err(Error::input("logdet input is not symmetric"));
            }
        }
    }
    Ok(logdet_sym(a))
}

/// [`logdet`] without the symmetry check.
pub(crate) fn logdet_sym(a: &DMatrix<f64>) -> f64 {
    let d = a.nrows();
    let trace = a.trace();
    if !(trace > 0.0) {
        return f64::NEG_INFINITY;
    }
    let eps = 1e-12 * trace;
    let mut l = DMatrix::<f64>::zeros(d, d);
    let mut sum = 0.0;
    for j in 0..d {
        let mut p = a[(j, j)];
        for k in 0..j {
            p -= l[(j, k)] * l[(j, k)];
        }
        if !(p > eps) {
            return f64::NEG_INFINITY;
        }
        let s = p.sqrt();
        l[(j, j)] = s;
        sum += p.ln();
        for i in j + 1..d {
            let mut q = a[(i, j)];
            for k in 0..j {
                q -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = q / s;
        }
    }
    sum
}

/// Inverse of a symmetric positive definite matrix, or `None` if singular.
pub(crate) fn spd_inverse(a: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    if logdet_sym(a) == f64::NEG_INFINITY {
        return None;
    }
    a.clone().cholesky().map(|c| c.inverse())
}

/// `det(sum_{i in S} x_i v_i v_i^T) = prod x_i * det(V_S)^2`.
pub fn det_of_subset(v: &VectorSet, s: &[usize], x: &[f64]) -> Result<f64> {
    if s.len() != v.d() {
        return Err(Error::input(format!("subset has {} elements, need d = {}", s.len(), v.d())));
    }
    let prod: f64 = s.iter().map(|&i| x[i]).product();
    if prod == 0.0 {
        return Ok(0.0);
    }
    let det = v.columns(s).determinant();
    Ok(prod * det * det)
}

/// Relative gap between both sides of the Cauchy–Binet expansion of
/// `det(sum_i x_i v_i v_i^T)`.
pub fn cauchy_binet_residual(v: &VectorSet, x: &[f64]) -> Result<f64> {
    const LIMIT: usize = 20;
    if v.n() > LIMIT {
        return Err(Error::Scale {
            what: "Cauchy-Binet enumeration",
            size: v.n(),
            limit: LIMIT,
        });
    }
    let lhs = weighted_gram(v, x).determinant();
    let mut rhs = 0.0;
    for s in (0..v.n()).combinations(v.d()) {
        rhs += det_of_subset(v, &s, x)?;
    }
    let scale = lhs.abs().max(rhs.abs());
    Ok(if scale == 0.0 { 0.0 } else { (lhs - rhs).abs() / scale })
}

/// Central differences of `f` at `p` with step `h`.
pub fn finite_difference_gradient(f: impl Fn(&[f64]) -> f64, p: &[f64], h: f64) -> Vec<f64> {
    let mut q = p.to_vec();
    (0..p.len())
        .map(|i| {
            q[i] = p[i] + h;
            let up = f(&q);
            q[i] = p[i] - h;
            let down = f(&q);
            q[i] = p[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}
