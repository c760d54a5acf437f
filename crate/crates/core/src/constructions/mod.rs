//! Explicit hypergraph constructions.

mod omitting;
mod regular;

pub use omitting::{
    default_tau, fitting_family_star, incidence_hypergraph, omitting_system,
    omitting_system_with, p_tau, preflight_q, realize, subsample_vertices, FittingFamily,
    OmittingBuild, OmittingParams, SubsampleResult, TraceWindowPolicy, Windows,
};
pub use regular::{regular_linear, regular_linear_with, PackingBudget};

use crate::error::{invalid, Result};
use crate::hypergraph::subsets::subsets;
use crate::hypergraph::{Hypergraph, Vertex};

/// S_λ^k(ℓ): center `0..l`, then `lambda` disjoint petals of size `k - l`.
pub fn sunflower(k: usize, l: usize, lambda: usize) -> Result<Hypergraph> {
    if l == 0 || l >= k || lambda == 0 {
        return invalid(format!("sunflower needs 1 <= l < k and lambda >= 1 (k={k}, l={l}, lambda={lambda})"));
    }
    let petal = k - l;
    let n = l + lambda * petal;
    let edges = (0..lambda).map(|i| {
        let start = l + i * petal;
        (0..l).chain(start..start + petal).map(|v| v as Vertex).collect::<Vec<_>>()
    });
    Hypergraph::with_uniformity(n, k, edges)
}

/// F^k: petals `E_i = {0} ∪ [1 + i(k-1), 1 + (i+1)(k-1))` for `i < k`, plus
/// the crossing edge made of the first vertex of each petal.
pub fn fan(k: usize) -> Result<Hypergraph> {
    if k < 2 {
        return invalid("fan needs k >= 2");
    }
    let n = k * (k - 1) + 1;
    let first = |i: usize| 1 + i * (k - 1);
    let mut edges: Vec<Vec<Vertex>> = (0..k)
        .map(|i| std::iter::once(0).chain(first(i)..first(i + 1)).map(|v| v as Vertex).collect())
        .collect();
    edges.push((0..k).map(|i| first(i) as Vertex).collect());
    Hypergraph::with_uniformity(n, k, edges)
}

/// L_{m,n}: on the grid `[m] x [n]`, vertex `(x, y)` stored as
/// `(x-1) n + (y-1)`. Each edge is `(x1, y1)` above `(x1, y2)` followed by
/// `(x2, y2), ..., (x_{k-1}, y2)` along row `y2`.
pub fn l_construction(m: usize, n: usize, k: usize) -> Result<Hypergraph> {
    if k < 3 {
        return invalid("L-construction needs k >= 3");
    }
    let vid = |x: usize, y: usize| ((x - 1) * n + (y - 1)) as Vertex;
    let xs: Vec<usize> = (1..=m).collect();
    let chains = subsets(&xs, k - 1);
    let mut edges = Vec::new();
    for y2 in 1..=n {
        for y1 in y2 + 1..=n {
            for chain in &chains {
                let mut e = vec![vid(chain[0], y1)];
                e.extend(chain.iter().map(|&x| vid(x, y2)));
                edges.push(e);
            }
        }
    }
    Hypergraph::with_uniformity(m * n, k, edges)
}

/// Random `(n, k, l)`-omitting system: `attempts` uniform `k`-sets, each kept
/// when it meets no kept edge in exactly `l` vertices.
pub fn random_omitting(n: usize, k: usize, l: usize, attempts: usize, seed: u64) -> Result<Hypergraph> {
    use rand::seq::index::sample;
    if k < 2 || k > n || l >= k {
        return invalid(format!("random omitting system needs 2 <= k <= n and l < k (n={n}, k={k}, l={l})"));
    }
    let mut rng = crate::seed::substream(seed, &[]);
    let mut kept: Vec<Vec<Vertex>> = Vec::new();
    for _ in 0..attempts {
        let mut e: Vec<Vertex> = sample(&mut rng, n, k).into_iter().map(|v| v as Vertex).collect();
        e.sort_unstable();
        if kept.iter().all(|f| *f != e && crate::hypergraph::subsets::intersection_size(f, &e) != l) {
            kept.push(e);
        }
    }
    Hypergraph::with_uniformity(n, k, kept)
}
