//! Dense symmetric eigensolving for bipartite graphs and the bipartite
//! expander-mixing check.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::field::BipartiteGraph;
use crate::scalar::Scalar;

/// Default ceiling on `m + n_right` for [`spectrum`].
pub const DENSE_BUDGET: usize = 2000;
pub const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a symmetric matrix, eigenvalues unsorted.
#[derive(Clone, Debug)]
pub struct Eigen<T> {
    pub values: Vec<T>,
    /// Column `j` of `vectors` (i.e. `vectors[i][j]` over `i`) pairs with `values[j]`.
    pub vectors: Vec<Vec<T>>,
    pub sweeps: usize,
    pub off_diagonal: T,
}

fn off_norm<T: Scalar>(a: &[Vec<T>]) -> T {
    let mut s = T::zero();
    for (i, row) in a.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if i != j {
                s += x * x;
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi. Stops once the off-diagonal Frobenius norm falls below
/// `T::JACOBI_TOL` times `max(1, |A|_F)`.
pub fn jacobi_eigen<T: Scalar>(matrix: &[Vec<T>]) -> Result<Eigen<T>> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return invalid("matrix is not square");
    }
    let mut a = matrix.to_vec();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let frob = a.iter().flatten().fold(T::zero(), |s, &x| s + x * x).sqrt();
    let target = T::lit(T::JACOBI_TOL) * frob.max(T::one());
    let two = T::lit(2.0);

    let mut sweeps = 0;
    let mut off = off_norm(&a);
    while off >= target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Solver { sweeps, residual: off.to_f64().unwrap_or(f64::NAN) });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
        off = off_norm(&a);
    }
    Ok(Eigen { values: (0..n).map(|i| a[i][i]).collect(), vectors: v, sweeps, off_diagonal: off })
}

/// Largest entry of `|A - Q diag(values) Q^T|`.
pub fn reconstruction_residual<T: Scalar>(matrix: &[Vec<T>], eig: &Eigen<T>) -> T {
    let n = matrix.len();
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            let mut s = T::zero();
            for (k, &lam) in eig.values.iter().enumerate() {
                s += eig.vectors[i][k] * lam * eig.vectors[j][k];
            }
            worst = worst.max((matrix[i][j] - s).abs());
        }
    }
    worst
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport<T> {
    /// Full adjacency spectrum, descending.
    pub eigenvalues: Vec<T>,
    pub lambda2: T,
    pub tolerance: T,
    /// Number of nonzero singular values of the biadjacency matrix.
    pub rank: usize,
    pub sweeps: usize,
    pub residual: T,
}

impl<T: Scalar> SpectrumReport<T> {
    pub fn largest(&self) -> T {
        self.eigenvalues.first().copied().unwrap_or_else(T::zero)
    }

    /// Distinct eigenvalues (descending) with multiplicities; values within
    /// `eps` of the current group's first member join that group.
    pub fn grouped(&self, eps: T) -> Vec<(T, usize)> {
        let mut out: Vec<(T, usize)> = Vec::new();
        for &x in &self.eigenvalues {
            match out.last_mut() {
                Some((rep, c)) if (*rep - x).abs() <= eps => *c += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    pub fn multiplicity_near(&self, value: T, eps: T) -> usize {
        self.eigenvalues.iter().filter(|&&x| (x - value).abs() <= eps).count()
    }

    /// `mu` and `-mu` appear equally often, pairing within `eps`.
    pub fn is_symmetric(&self, eps: T) -> bool {
        let n = self.eigenvalues.len();
        (0..n).all(|i| (self.eigenvalues[i] + self.eigenvalues[n - 1 - i]).abs() <= eps)
    }

    pub fn to_csv(&self, eps: T) -> String {
        let mut out = String::from("eigenvalue,multiplicity\n");
        for (x, c) in self.grouped(eps) {
            writeln!(out, "{x},{c}").unwrap();
        }
        out
    }
}

/// Adjacency spectrum of `g` as `{±σ_i} ∪ {0}`, with `σ_i` from the Gram
/// matrix on the smaller side.
pub fn spectrum<T: Scalar>(g: &BipartiteGraph, tol: T) -> Result<SpectrumReport<T>> {
    spectrum_with_budget(g, tol, DENSE_BUDGET)
}

pub fn spectrum_with_budget<T: Scalar>(
    g: &BipartiteGraph,
    tol: T,
    budget: usize,
) -> Result<SpectrumReport<T>> {
    let (m, n) = (g.left_size(), g.right_size());
    if m + n > budget {
        return invalid(format!("{} vertices exceed the dense solver budget {budget}", m + n));
    }
    let gram = gram_matrix::<T>(g);
    let eig = jacobi_eigen(&gram)?;
    let residual = reconstruction_residual(&gram, &eig);
    if residual > tol.max(T::lit(T::JACOBI_TOL)) {
        return Err(Error::Solver {
            sweeps: eig.sweeps,
            residual: residual.to_f64().unwrap_or(f64::NAN),
        });
    }
    let zero = T::lit(T::ZERO_SINGULAR);
    let mut sigma: Vec<T> = eig
        .values
        .iter()
        .map(|&l| l.max(T::zero()).sqrt())
        .filter(|&s| s >= zero)
        .collect();
    sigma.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rank = sigma.len();
    let mut eigenvalues = sigma.clone();
    eigenvalues.extend(std::iter::repeat_n(T::zero(), m + n - 2 * rank));
    eigenvalues.extend(sigma.iter().rev().map(|&s| -s));
    let lambda2 = eigenvalues.get(1).copied().unwrap_or_else(T::zero);
    Ok(SpectrumReport { eigenvalues, lambda2, tolerance: tol, rank, sweeps: eig.sweeps, residual })
}

/// `B B^T` or `B^T B`, whichever is smaller.
fn gram_matrix<T: Scalar>(g: &BipartiteGraph) -> Vec<Vec<T>> {
    let (m, n) = (g.left_size(), g.right_size());
    if m <= n {
        let mut gram = vec![vec![T::zero(); m]; m];
        for a in 0..m {
            for b in a..m {
                let c = T::from_count(g.common_neighbors(a, b).len());
                gram[a][b] = c;
                gram[b][a] = c;
            }
        }
        gram
    } else {
        let mut gram = vec![vec![T::zero(); n]; n];
        for nb in g.adjacency() {
            for &x in nb {
                for &y in nb {
                    gram[x as usize][y as usize] += T::one();
                }
            }
        }
        gram
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MixingReport<T> {
    pub edges: usize,
    pub mean: T,
    pub discrepancy: T,
    pub bound: T,
    pub pass: bool,
}

/// Compares `e(X, Y)` to `d1 |X| |Y| / n_right`; passes when the gap is at
/// most `lambda * sqrt(|X| |Y|)`.
pub fn mixing_discrepancy<T: Scalar>(
    g: &BipartiteGraph,
    xs: &[u32],
    ys: &[u32],
    lambda: T,
) -> Result<MixingReport<T>> {
    let d1 = g
        .left_regular()
        .ok_or_else(|| Error::InvalidInput("mixing check needs a left-regular graph".into()))?;
    let xs = dedup_checked(xs, g.left_size(), "left")?;
    let ys = dedup_checked(ys, g.right_size(), "right")?;
    let edges = g.edges_between(&xs, &ys);
    let (nx, ny) = (T::from_count(xs.len()), T::from_count(ys.len()));
    let mean = if g.right_size() == 0 {
        T::zero()
    } else {
        T::from_count(d1) * nx * ny / T::from_count(g.right_size())
    };
    let discrepancy = (T::from_count(edges) - mean).abs();
    let bound = lambda * (nx * ny).sqrt();
    // absorb rounding when the inequality is tight
    let slack = T::lit(T::JACOBI_TOL) * T::lit(1e3) * (T::one() + bound);
    Ok(MixingReport { edges, mean, discrepancy, bound, pass: discrepancy <= bound + slack })
}

fn dedup_checked(xs: &[u32], limit: usize, side: &str) -> Result<Vec<u32>> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.last().is_some_and(|&x| x as usize >= limit) {
        return invalid(format!("{side} vertex out of range"));
    }
    Ok(v)
}
