use super::witness::{Witness, WitnessKind};
use super::{Budget, DEFAULT_MATCHING_EDGES};
use crate::error::{invalid, Result};
use crate::hypergraph::{Hypergraph, Vertex};

#[derive(Clone, Debug)]
pub struct MatchingResult {
    pub nu: usize,
    pub witness: Witness,
    pub nodes: u64,
}

pub fn matching_number_exact(h: &Hypergraph, budget: u64) -> Result<MatchingResult> {
    if h.len() > DEFAULT_MATCHING_EDGES {
        return invalid(format!(
            "exact matching oracle is limited to {DEFAULT_MATCHING_EDGES} edges, got {}",
            h.len()
        ));
    }
    let sets: Vec<&[Vertex]> = h.edges().iter().map(Vec::as_slice).collect();
    let mut b = Budget::new(budget);
    let best = max_disjoint(&sets, usize::MAX, &mut b)?;
    let witness = Witness::certified(WitnessKind::Matching, h, vec![], best.clone())?;
    Ok(MatchingResult { nu: best.len(), witness, nodes: b.used() })
}

/// Largest (or first of size `target`) family of pairwise disjoint sets;
/// returns indices into `sets`.
pub(crate) fn max_disjoint(sets: &[&[Vertex]], target: usize, budget: &mut Budget) -> Result<Vec<usize>> {
    let mut s = Packer { sets, target, best: Vec::new(), current: Vec::new(), budget };
    let all: Vec<usize> = (0..sets.len()).collect();
    s.go(&all)?;
    Ok(s.best)
}

struct Packer<'a, 'b> {
    sets: &'a [&'a [Vertex]],
    target: usize,
    best: Vec<usize>,
    current: Vec<usize>,
    budget: &'b mut Budget,
}

impl Packer<'_, '_> {
    fn done(&self) -> bool {
        self.best.len() >= self.target
    }

    /// Branches on the smallest vertex touched by `avail`: either it stays
    /// uncovered or one of the available sets through it is taken.
    fn go(&mut self, avail: &[usize]) -> Result<()> {
        self.budget.tick()?;
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if avail.is_empty() || self.done() {
            return Ok(());
        }
        let mut touched: Vec<Vertex> = avail.iter().flat_map(|&i| self.sets[i].iter().copied()).collect();
        touched.sort_unstable();
        touched.dedup();
        let min_size = avail.iter().map(|&i| self.sets[i].len()).min().unwrap().max(1);
        let bound = avail.len().min(touched.len() / min_size);
        if self.current.len() + bound <= self.best.len() {
            return Ok(());
        }
        let v = touched[0];
        let (through, rest): (Vec<usize>, Vec<usize>) =
            avail.iter().partition(|&&i| self.sets[i].binary_search(&v).is_ok());
        for &i in &through {
            let next: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|&j| disjoint(self.sets[i], self.sets[j]))
                .collect();
            self.current.push(i);
            self.go(&next)?;
            self.current.pop();
            if self.done() {
                return Ok(());
            }
        }
        self.go(&rest)
    }
}

fn disjoint(a: &[Vertex], b: &[Vertex]) -> bool {
    crate::hypergraph::subsets::intersection_size(a, b) == 0
}
