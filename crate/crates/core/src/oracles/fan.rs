use super::witness::{Witness, WitnessKind};
use super::Budget;
use crate::error::Result;
use crate::hypergraph::subsets::{intersection, intersection_size};
use crate::hypergraph::{Hypergraph, Vertex};

/// Searches for F^k: an apex `v`, a crossing edge `E` avoiding `v`, and for
/// each `u ∈ E` an edge through `v` meeting `E` exactly in `{u}`, the chosen
/// edges pairwise meeting only in `v`.
pub fn contains_fan(h: &Hypergraph, budget: u64) -> Result<Option<Witness>> {
    if h.is_empty() {
        return Ok(None);
    }
    let k = h.require_uniform("contains_fan")?;
    let incidence = h.incidence();
    let mut budget = Budget::new(budget);
    for (v, through) in incidence.iter().enumerate() {
        if through.len() < k {
            continue;
        }
        let v = v as Vertex;
        for (ei, cross) in h.edges().iter().enumerate() {
            if cross.binary_search(&v).is_ok() {
                continue;
            }
            // candidates[j]: edges through v meeting the crossing edge exactly in cross[j]
            let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); k];
            for &f in through {
                let common = intersection(h.edge(f), cross);
                if let [u] = common[..] {
                    candidates[cross.binary_search(&u).unwrap()].push(f);
                }
            }
            if candidates.iter().any(Vec::is_empty) {
                continue;
            }
            let mut slots: Vec<usize> = (0..k).collect();
            slots.sort_by_key(|&j| candidates[j].len());
            let mut chosen = Vec::with_capacity(k);
            if assign(h, &candidates, &slots, &mut chosen, &mut budget)? {
                let mut edges = chosen;
                edges.push(ei);
                return Witness::certified(WitnessKind::Fan, h, vec![vec![v]], edges).map(Some);
            }
        }
    }
    Ok(None)
}

/// Chooses one candidate per slot, pairwise meeting only in the apex (each
/// candidate contains the apex, so the test is an intersection of size 1).
fn assign(
    h: &Hypergraph,
    candidates: &[Vec<usize>],
    slots: &[usize],
    chosen: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<bool> {
    budget.tick()?;
    let Some((&slot, rest)) = slots.split_first() else { return Ok(true) };
    for &f in &candidates[slot] {
        if chosen.iter().all(|&g| intersection_size(h.edge(f), h.edge(g)) == 1) {
            chosen.push(f);
            if assign(h, candidates, rest, chosen, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
    }
    Ok(false)
}
