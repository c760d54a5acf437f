use std::collections::HashMap;

use serde::Serialize;

use super::matching::max_disjoint;
use super::witness::{Witness, WitnessKind};
use super::Budget;
use crate::error::{invalid, Result};
use crate::hypergraph::subsets::{for_each_subset, intersection};
use crate::hypergraph::{Hypergraph, Vertex};

/// Searches for `lambda` edges whose pairwise intersections all equal one
/// `l`-set. Cores are drawn from `l`-subsets of edges; for each core the
/// stripped residues must contain `lambda` pairwise disjoint members.
pub fn contains_sunflower(h: &Hypergraph, l: usize, lambda: usize, budget: u64) -> Result<Option<Witness>> {
    if h.is_empty() {
        return Ok(None);
    }
    let k = h.require_uniform("contains_sunflower")?;
    if l >= k || lambda == 0 {
        // no two distinct edges share all k vertices
        if lambda == 1 && l <= k {
            let core = h.edge(0)[..l].to_vec();
            return Witness::certified(WitnessKind::Sunflower, h, vec![core], vec![0]).map(Some);
        }
        return Ok(None);
    }
    let mut by_core: HashMap<Vec<Vertex>, Vec<usize>> = HashMap::new();
    for (i, e) in h.edges().iter().enumerate() {
        for_each_subset(e, l, |s| by_core.entry(s.to_vec()).or_default().push(i));
    }
    let mut cores: Vec<(Vec<Vertex>, Vec<usize>)> =
        by_core.into_iter().filter(|(_, es)| es.len() >= lambda).collect();
    cores.sort_unstable();

    let mut budget = Budget::new(budget);
    for (core, members) in cores {
        let residues: Vec<Vec<Vertex>> = members
            .iter()
            .map(|&i| h.edge(i).iter().copied().filter(|v| core.binary_search(v).is_err()).collect())
            .collect();
        let touched: usize = {
            let mut all: Vec<Vertex> = residues.iter().flatten().copied().collect();
            all.sort_unstable();
            all.dedup();
            all.len()
        };
        if touched < lambda * (k - l) {
            continue;
        }
        let sets: Vec<&[Vertex]> = residues.iter().map(Vec::as_slice).collect();
        let picked = max_disjoint(&sets, lambda, &mut budget)?;
        if picked.len() >= lambda {
            let edges = picked[..lambda].iter().map(|&j| members[j]).collect();
            return Witness::certified(WitnessKind::Sunflower, h, vec![core], edges).map(Some);
        }
    }
    Ok(None)
}

/// A pair of edges meeting in exactly `l` vertices, if any.
///
/// Pairs sharing a vertex are visited once, from their smallest common
/// vertex; `l = 0` falls back to the full pairwise scan.
pub fn omitting_check(h: &Hypergraph, l: usize) -> Option<Witness> {
    let pair = if l == 0 {
        (0..h.len())
            .flat_map(|a| (a + 1..h.len()).map(move |b| (a, b)))
            .find(|&(a, b)| intersection(h.edge(a), h.edge(b)).is_empty())
    } else {
        let incidence = h.incidence();
        let mut found = None;
        'outer: for (v, through) in incidence.iter().enumerate() {
            for (x, &a) in through.iter().enumerate() {
                for &b in &through[x + 1..] {
                    let common = intersection(h.edge(a), h.edge(b));
                    if common[0] as usize == v && common.len() == l {
                        found = Some((a, b));
                        break 'outer;
                    }
                }
            }
        }
        found
    };
    pair.map(|(a, b)| {
        let common = intersection(h.edge(a), h.edge(b));
        Witness::certified(WitnessKind::OmittingPair, h, vec![common], vec![a, b])
            .expect("omitting pair is valid by construction")
    })
}

/// `(k λ)^(2^(i-1))`, saturating.
pub fn lambda_i(k: usize, lambda: usize, i: usize) -> u64 {
    let base = (k as u64).saturating_mul(lambda as u64);
    let mut x = base;
    for _ in 1..i {
        x = x.saturating_mul(x);
    }
    x
}

#[derive(Clone, Debug, Serialize)]
pub struct Indecomposability {
    pub indecomposable: bool,
    /// Smallest `i` with a sunflower `S_{λ_i}(k' - i)`.
    pub i0: Option<usize>,
    pub witness: Option<Witness>,
}

/// `k0`-indecomposability of a uniform `h`, with `λ_i` computed from the
/// outer uniformity `k` and `lambda`.
pub fn indecomposability_check(
    h: &Hypergraph,
    k0: usize,
    k: usize,
    lambda: usize,
    budget: u64,
) -> Result<Indecomposability> {
    let kp = match h.uniform_k() {
        Some(kp) => kp,
        None if h.is_empty() => k0,
        None => return invalid("indecomposability needs a uniform hypergraph"),
    };
    if kp < k0 {
        return invalid(format!("edge size {kp} is below k0 = {k0}"));
    }
    for i in 1..=kp - k0 {
        let li = lambda_i(k, lambda, i);
        if li > h.len() as u64 {
            continue;
        }
        if let Some(w) = contains_sunflower(h, kp - i, li as usize, budget)? {
            return Ok(Indecomposability { indecomposable: false, i0: Some(i), witness: Some(w) });
        }
    }
    Ok(Indecomposability { indecomposable: true, i0: None, witness: None })
}
