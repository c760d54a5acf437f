//! d-regular linear k-graphs as a union of `d` perfect matchings, each new
//! matching placed by randomized packing search.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::seed::substream;

#[derive(Clone, Copy, Debug)]
pub struct PackingBudget {
    pub perms_per_level: usize,
    pub restarts: usize,
    /// Hill-climbing swaps per permutation, as a multiple of `n`.
    pub swaps_per_vertex: usize,
}

impl Default for PackingBudget {
    fn default() -> Self {
        PackingBudget { perms_per_level: 200, restarts: 5, swaps_per_vertex: 50 }
    }
}

pub fn regular_linear(n: usize, k: usize, d: usize, seed: u64) -> Result<Hypergraph> {
    regular_linear_with(n, k, d, seed, PackingBudget::default())
}

pub fn regular_linear_with(
    n: usize,
    k: usize,
    d: usize,
    seed: u64,
    budget: PackingBudget,
) -> Result<Hypergraph> {
    if k < 2 || n == 0 || n % k != 0 {
        return invalid(format!("regular linear graph needs k >= 2 dividing n (n={n}, k={k})"));
    }
    if d == 0 || d * (k - 1) > n - 1 {
        return invalid(format!("degree {d} is infeasible: need 1 <= d <= (n-1)/(k-1)"));
    }
    let mut best_level = 0;
    for restart in 0..budget.restarts.max(1) {
        let mut rng = substream(seed, &[restart as u64]);
        let mut packer = Packer::new(n, k);
        let mut blocks: Vec<Vec<Vertex>> = Vec::with_capacity(d * n / k);
        let identity: Vec<Vertex> = (0..n as Vertex).collect();
        packer.cover(&identity);
        blocks.extend(identity.chunks(k).map(<[Vertex]>::to_vec));
        let mut level = 1;
        while level < d {
            match packer.search(&mut rng, budget) {
                Some(perm) => {
                    packer.cover(&perm);
                    blocks.extend(perm.chunks(k).map(|c| {
                        let mut c = c.to_vec();
                        c.sort_unstable();
                        c
                    }));
                    level += 1;
                }
                None => break,
            }
        }
        best_level = best_level.max(level);
        if level == d {
            let h = Hypergraph::with_uniformity(n, k, blocks)?;
            verify(&h, d)?;
            return Ok(h);
        }
    }
    Err(Error::ConstructionFailed {
        level: best_level,
        reason: format!("no packing for level {} within budget", best_level + 1),
    })
}

fn verify(h: &Hypergraph, d: usize) -> Result<()> {
    let degrees_ok = h.vertex_degrees().iter().all(|&x| x == d);
    let linear = h.cycle_census()?.is_linear();
    if degrees_ok && linear {
        Ok(())
    } else {
        Err(Error::Verification(format!("regular linear output: regular={degrees_ok}, linear={linear}")))
    }
}

/// Pair-coverage state plus the hill climb that places one more matching.
struct Packer {
    n: usize,
    k: usize,
    covered: Vec<bool>,
}

impl Packer {
    fn new(n: usize, k: usize) -> Self {
        Packer { n, k, covered: vec![false; n * n] }
    }

    fn is_covered(&self, a: Vertex, b: Vertex) -> bool {
        self.covered[a as usize * self.n + b as usize]
    }

    fn cover(&mut self, perm: &[Vertex]) {
        for block in perm.chunks(self.k) {
            for (i, &a) in block.iter().enumerate() {
                for &b in &block[i + 1..] {
                    self.covered[a as usize * self.n + b as usize] = true;
                    self.covered[b as usize * self.n + a as usize] = true;
                }
            }
        }
    }

    fn block_cost(&self, block: &[Vertex]) -> usize {
        let mut c = 0;
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                c += self.is_covered(a, b) as usize;
            }
        }
        c
    }

    /// Finds a permutation whose consecutive `k`-blocks cover no covered pair.
    fn search(&self, rng: &mut impl Rng, budget: PackingBudget) -> Option<Vec<Vertex>> {
        let (n, k) = (self.n, self.k);
        let blocks = n / k;
        for _ in 0..budget.perms_per_level {
            let mut perm: Vec<Vertex> = (0..n as Vertex).collect();
            perm.shuffle(rng);
            let mut cost: Vec<usize> = perm.chunks(k).map(|b| self.block_cost(b)).collect();
            let mut total: usize = cost.iter().sum();
            let mut swaps = 0;
            while total > 0 && swaps < budget.swaps_per_vertex * n {
                swaps += 1;
                let bad: Vec<usize> = (0..blocks).filter(|&b| cost[b] > 0).collect();
                let b1 = *bad.choose(rng).unwrap();
                let i = b1 * k + rng.gen_range(0..k);
                let j = rng.gen_range(0..n);
                let b2 = j / k;
                if b1 == b2 {
                    continue;
                }
                perm.swap(i, j);
                let c1 = self.block_cost(&perm[b1 * k..(b1 + 1) * k]);
                let c2 = self.block_cost(&perm[b2 * k..(b2 + 1) * k]);
                if c1 + c2 <= cost[b1] + cost[b2] {
                    total = total + c1 + c2 - cost[b1] - cost[b2];
                    cost[b1] = c1;
                    cost[b2] = c2;
                } else {
                    perm.swap(i, j);
                }
            }
            if total == 0 {
                return Some(perm);
            }
        }
        None
    }
}
