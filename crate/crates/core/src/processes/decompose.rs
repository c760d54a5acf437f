//! Sunflower-driven decomposition, degree split, deletion bound and greedy
//! matching.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::subsets::for_each_subset;
use crate::hypergraph::{Hypergraph, Vertex};
use crate::oracles::{indecomposability_check, lambda_i};
use crate::seed::substream;

#[derive(Clone, Debug, Serialize)]
pub struct Split {
    pub from_size: usize,
    pub i0: usize,
    pub lambda_i0: u64,
    /// `true` for the high-degree (k'-i0)-sets, `false` for the leftover edges.
    pub high: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Member {
    #[serde(skip)]
    pub hypergraph: Hypergraph,
    pub edge_size: usize,
    pub edges: usize,
    pub provenance: Vec<Split>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionResult {
    pub family: Vec<Member>,
    pub k: usize,
    pub k0: usize,
    pub lambda: usize,
}

impl DecompositionResult {
    pub fn members(&self) -> impl Iterator<Item = &Hypergraph> {
        self.family.iter().map(|m| &m.hypergraph)
    }
}

/// All `s`-subsets of edges of `g` whose degree in `g` is at least `min_degree`.
fn heavy_sets(g: &Hypergraph, s: usize, min_degree: u64) -> Vec<Vec<Vertex>> {
    let mut deg: HashMap<Vec<Vertex>, u64> = HashMap::new();
    for e in g.edges() {
        for_each_subset(e, s, |a| *deg.entry(a.to_vec()).or_default() += 1);
    }
    let mut out: Vec<Vec<Vertex>> = deg.into_iter().filter(|(_, d)| *d >= min_degree).map(|(a, _)| a).collect();
    out.sort_unstable();
    out
}

fn edges_avoiding(g: &Hypergraph, s: usize, banned: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    let banned: HashSet<&[Vertex]> = banned.iter().map(Vec::as_slice).collect();
    g.edges()
        .iter()
        .filter(|e| {
            let mut hit = false;
            for_each_subset(e, s, |a| hit |= banned.contains(a));
            !hit
        })
        .cloned()
        .collect()
}

/// Splits members until each is `k0`-indecomposable, then verifies the
/// family size bound, indecomposability and edge containment.
pub fn decompose(h: &Hypergraph, k0: usize, lambda: usize, budget: u64) -> Result<DecompositionResult> {
    if k0 < 2 {
        return invalid("k0 must be at least 2");
    }
    let k = match h.uniform_k() {
        Some(k) => k,
        None if h.is_empty() => k0,
        None => return invalid("decompose needs a uniform hypergraph"),
    };
    if k < k0 {
        return invalid(format!("edge size {k} is below k0 = {k0}"));
    }
    let mut work = vec![Member { hypergraph: h.clone(), edge_size: k, edges: h.len(), provenance: vec![] }];
    let mut family = Vec::new();
    while let Some(member) = work.pop() {
        let verdict = indecomposability_check(&member.hypergraph, k0, k, lambda, budget)?;
        let Some(i0) = verdict.i0 else {
            family.push(member);
            continue;
        };
        let kp = member.edge_size;
        let li = lambda_i(k, lambda, i0);
        let high = heavy_sets(&member.hypergraph, kp - i0, li);
        let low = edges_avoiding(&member.hypergraph, kp - i0, &high);
        let n = member.hypergraph.n();
        let child = |hg: Hypergraph, size: usize, is_high: bool| {
            let mut provenance = member.provenance.clone();
            provenance.push(Split { from_size: kp, i0, lambda_i0: li, high: is_high });
            Member { edges: hg.len(), hypergraph: hg, edge_size: size, provenance }
        };
        // low first so the high part is processed next (depth first)
        work.push(child(Hypergraph::with_uniformity(n, kp, low)?, kp, false));
        work.push(child(Hypergraph::with_uniformity(n, kp - i0, high)?, kp - i0, true));
    }
    family.sort_by(|a, b| a.edge_size.cmp(&b.edge_size).then(a.edges.cmp(&b.edges)));

    if family.len() > 1usize << (k - k0).min(63) {
        return Err(Error::Verification(format!("family of {} exceeds 2^(k-k0)", family.len())));
    }
    if !containment_holds(h, family.iter().map(|m| &m.hypergraph)) {
        return Err(Error::Verification("an input edge contains no member edge".into()));
    }
    Ok(DecompositionResult { family, k, k0, lambda })
}

/// Every edge of `h` contains an edge of some member.
pub fn containment_holds<'a>(h: &Hypergraph, members: impl Iterator<Item = &'a Hypergraph>) -> bool {
    let sets: Vec<(usize, HashSet<&[Vertex]>)> = members
        .filter(|m| !m.is_empty())
        .map(|m| (m.edge(0).len(), m.edges().iter().map(Vec::as_slice).collect()))
        .collect();
    h.edges().iter().all(|e| {
        sets.iter().any(|(s, set)| {
            let mut hit = false;
            if *s <= e.len() {
                for_each_subset(e, *s, |a| hit |= set.contains(a));
            }
            hit
        })
    })
}

/// `n^((k-3)/(k-1)) / (ln n)^(4/5)`.
pub fn default_split_threshold(n: usize, k: usize) -> f64 {
    let n = n.max(2) as f64;
    n.powf((k as f64 - 3.0) / (k as f64 - 1.0)) / n.ln().powf(0.8)
}

/// `(H_high, H_low)`: shadow `(k-1)`-sets of degree at least `threshold`,
/// and the edges having none of them as a subset.
pub fn degree_split(h: &Hypergraph, threshold: f64) -> Result<(Hypergraph, Hypergraph)> {
    let k = h.require_uniform("degree_split")?;
    if k < 3 {
        return invalid("degree split needs k >= 3");
    }
    if !(threshold > 0.0) {
        return invalid("threshold must be positive");
    }
    let min_degree = threshold.ceil() as u64;
    let high = heavy_sets(h, k - 1, min_degree.max(1));
    let low = edges_avoiding(h, k - 1, &high);
    Ok((Hypergraph::with_uniformity(h.n(), k - 1, high)?, Hypergraph::with_uniformity(h.n(), k, low)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct DeletionResult {
    /// Largest repaired set over the trials, sorted.
    pub best: Vec<Vertex>,
    /// Mean of `|I| - Σ |H_i[I]|` before repair.
    pub mean_expectation_proxy: f64,
    pub mean_repaired: f64,
    pub trials: usize,
}

/// Samples each vertex with probability `p`, then for every member edge still
/// inside the sample removes its lowest vertex.
pub fn deletion_lower_bound(family: &[Hypergraph], n: usize, p: f64, trials: usize, seed: u64) -> Result<DeletionResult> {
    if !(p > 0.0 && p <= 1.0) {
        return invalid(format!("probability {p} is outside (0, 1]"));
    }
    if family.iter().any(|g| g.n() != n) {
        return invalid("family members must share the vertex set");
    }
    let runs: Vec<(Vec<Vertex>, i64)> = (0..trials.max(1))
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(seed, &[t as u64]);
            let mut in_i: Vec<bool> = (0..n).map(|_| p >= 1.0 || rng.gen_bool(p)).collect();
            let sampled = in_i.iter().filter(|&&b| b).count() as i64;
            let inside: i64 = family
                .iter()
                .map(|g| g.edges().iter().filter(|e| e.iter().all(|&v| in_i[v as usize])).count() as i64)
                .sum();
            for g in family {
                for e in g.edges() {
                    if e.iter().all(|&v| in_i[v as usize]) {
                        in_i[e[0] as usize] = false;
                    }
                }
            }
            let set: Vec<Vertex> = (0..n as Vertex).filter(|&v| in_i[v as usize]).collect();
            (set, sampled - inside)
        })
        .collect();
    for (set, _) in &runs {
        if let Some(g) = family.iter().find(|g| !g.is_independent(set)) {
            return Err(Error::Verification(format!("repaired set spans an edge of a {}-vertex member", g.n())));
        }
    }
    let t = runs.len() as f64;
    let mean_expectation_proxy = runs.iter().map(|r| r.1 as f64).sum::<f64>() / t;
    let mean_repaired = runs.iter().map(|r| r.0.len() as f64).sum::<f64>() / t;
    let best = runs.into_iter().map(|r| r.0).max_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a))).unwrap();
    Ok(DeletionResult { best, mean_expectation_proxy, mean_repaired, trials: trials.max(1) })
}

/// First-fit maximal matching over edges in lexicographic order; returns
/// the chosen edges.
pub fn greedy_matching(h: &Hypergraph) -> Vec<Vec<Vertex>> {
    let mut used = vec![false; h.n()];
    let mut out = Vec::new();
    for e in h.canonical_edges() {
        if e.iter().all(|&v| !used[v as usize]) {
            e.iter().for_each(|&v| used[v as usize] = true);
            out.push(e);
        }
    }
    out
}

/// `m / Π_{i=1}^{k-1} (i+1) λ_i` for `lambdas = [λ_1, ..., λ_{k-1}]`.
pub fn matching_floor(m: usize, lambdas: &[u64]) -> f64 {
    let denom: f64 = lambdas.iter().enumerate().map(|(i, &l)| (i as f64 + 2.0) * l as f64).product();
    m as f64 / denom
}
