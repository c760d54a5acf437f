//! Exact maximum independent set on at most 128 vertices.

use super::witness::{Witness, WitnessKind};
use super::{Budget, DEFAULT_MIS_VERTICES};
use crate::error::{invalid, Result};
use crate::hypergraph::{Hypergraph, Vertex};

#[derive(Clone, Debug)]
pub struct MisResult {
    pub alpha: usize,
    pub witness: Witness,
    pub nodes: u64,
}

pub fn max_independent_set_exact(h: &Hypergraph, budget: u64) -> Result<MisResult> {
    max_independent_set_exact_with(h, budget, DEFAULT_MIS_VERTICES)
}

/// Branch and bound over vertices in degree-descending order. A node's bound
/// is `|chosen| + |candidates|` minus a greedy packing of pairwise disjoint
/// candidate residues of still-live edges, each of which costs at least one
/// candidate.
pub fn max_independent_set_exact_with(h: &Hypergraph, budget: u64, max_n: usize) -> Result<MisResult> {
    let n = h.n();
    if n > max_n.min(128) {
        return invalid(format!("exact independence oracle is limited to {} vertices, got {n}", max_n.min(128)));
    }
    let edges: Vec<u128> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u128, |m, &v| m | (1u128 << v)))
        .collect();
    let degrees = h.vertex_degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));

    let mut s = Search { edges, order, best: 0, best_size: 0, budget: Budget::new(budget) };
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    // seed the incumbent with a greedy pass
    let mut greedy = 0u128;
    for &v in &s.order {
        let bit = 1u128 << v;
        if s.edges.iter().all(|&e| e & !(greedy | bit) != 0) {
            greedy |= bit;
        }
    }
    s.best = greedy;
    s.best_size = greedy.count_ones() as usize;
    s.branch(0, all)?;

    let set: Vec<Vertex> = (0..n as Vertex).filter(|&v| s.best >> v & 1 == 1).collect();
    let witness = Witness::certified(WitnessKind::IndependentSet, h, vec![set], vec![])?;
    Ok(MisResult { alpha: s.best_size, witness, nodes: s.budget.used() })
}

struct Search {
    edges: Vec<u128>,
    order: Vec<usize>,
    best: u128,
    best_size: usize,
    budget: Budget,
}

impl Search {
    fn branch(&mut self, chosen: u128, mut cand: u128) -> Result<()> {
        self.budget.tick()?;
        // a live edge lies inside chosen ∪ cand; a single candidate left in
        // one is forced out
        let mut live: Vec<u128> = Vec::new();
        for &e in &self.edges {
            if e & !(chosen | cand) == 0 {
                let r = e & cand;
                if r.count_ones() == 1 {
                    cand &= !r;
                } else {
                    live.push(r);
                }
            }
        }
        let base = chosen.count_ones() as usize;
        if cand == 0 {
            if base > self.best_size {
                self.best = chosen;
                self.best_size = base;
            }
            return Ok(());
        }
        live.retain(|&r| r & !cand == 0);
        live.sort_by_key(|r| r.count_ones());
        let mut used = 0u128;
        let mut packed = 0;
        for &r in &live {
            if r & used == 0 {
                used |= r;
                packed += 1;
            }
        }
        if base + cand.count_ones() as usize - packed <= self.best_size {
            return Ok(());
        }
        let v = *self.order.iter().find(|&&v| cand >> v & 1 == 1).unwrap();
        let bit = 1u128 << v;
        self.branch(chosen | bit, cand & !bit)?;
        self.branch(chosen, cand & !bit)
    }
}

/// α by scanning every vertex subset; for cross-checking on small inputs.
pub fn max_independent_set_enumerate(h: &Hypergraph) -> Result<usize> {
    let n = h.n();
    if n > 24 {
        return invalid(format!("enumeration oracle is limited to 24 vertices, got {n}"));
    }
    let edges: Vec<u32> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u32, |m, &v| m | (1u32 << v)))
        .collect();
    let mut best = 0;
    for set in 0u32..(1u32 << n) {
        let size = set.count_ones() as usize;
        if size > best && edges.iter().all(|&e| e & set != e) {
            best = size;
        }
    }
    Ok(best)
}
