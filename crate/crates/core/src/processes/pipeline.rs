//! Common independent set of a `k1`-graph `H` and a `k2`-graph `G` through
//! a regularized product.
//!
//! Each vertex `v` gets a `(D - d_H(v))`-regular linear `k1`-graph on `[m]`,
//! so `Ĥ = H □ F` is `D`-regular on `V x [m]` (vertex `(v, j)` is `v m + j`).
//! Greedy runs on `Ĥ` for `⌊p n m⌋` steps; inside every column, one vertex is
//! deleted from each surviving pair of `G`-edges meeting in `2..k2-1`
//! vertices, leaving `G` linear there; a degree-ordered pass then picks an
//! independent set of what is left of `G`, and the densest column is
//! projected back to `V`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::Serialize;

use super::greedy::greedy_independent_set;
use crate::constructions::regular_linear;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::subsets::intersection_size;
use crate::hypergraph::{cartesian_product, Hypergraph, Vertex};
use crate::seed::{substream_seed, tag};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PipelineConfig {
    /// Target degree; defaults to `Δ(H)`.
    pub d: Option<usize>,
    /// Product width; defaults to the smallest multiple of `k1` above `4D`.
    pub m: Option<usize>,
    pub c: f64,
    /// Cap on greedy steps.
    pub budget: Option<usize>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { d: None, m: None, c: 0.5, budget: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineResult {
    pub independent_set: Vec<Vertex>,
    pub column: usize,
    pub d: usize,
    pub m: usize,
    pub p: f64,
    pub target_steps: usize,
    pub steps_run: usize,
    /// Greedy ended before `⌊p n m⌋` steps.
    pub shortfall: bool,
    pub budget_exhausted: bool,
    pub cycle_deletions: usize,
    pub independent_in_h: bool,
    pub independent_in_g: bool,
}

pub fn product_pipeline(h: &Hypergraph, g: &Hypergraph, seed: u64, config: PipelineConfig) -> Result<PipelineResult> {
    let n = h.n();
    if g.n() != n {
        return invalid("H and G must share the vertex set");
    }
    let k1 = h.uniform_k().or(if h.is_empty() { Some(2) } else { None });
    let Some(k1) = k1 else { return invalid("H must be uniform") };
    let k2 = match g.uniform_k() {
        Some(k) => k,
        None if g.is_empty() => 2,
        None => return invalid("G must be uniform"),
    };
    let degrees = h.vertex_degrees();
    let dmax = degrees.iter().copied().max().unwrap_or(0);
    let d = config.d.unwrap_or(dmax);
    if d < dmax {
        return invalid(format!("target degree {d} is below Δ(H) = {dmax}"));
    }
    let m = config.m.unwrap_or((4 * d / k1 + 1) * k1);
    if m == 0 || m % k1 != 0 {
        return invalid(format!("product width {m} must be a positive multiple of k1 = {k1}"));
    }

    let mut cache: HashMap<usize, Hypergraph> = HashMap::new();
    let mut family = Vec::with_capacity(n);
    for &dv in &degrees {
        let need = d - dv;
        if let Entry::Vacant(slot) = cache.entry(need) {
            slot.insert(if need == 0 {
                Hypergraph::empty_uniform(m, k1)?
            } else {
                regular_linear(m, k1, need, substream_seed(seed, &[tag("regularizer"), need as u64]))?
            });
        }
        family.push(cache[&need].clone());
    }
    let hat = cartesian_product(h, &family)?;

    let nm = (n * m) as f64;
    let p = if d == 0 {
        1.0
    } else {
        (config.c * (nm.max(2.0).ln() / d as f64).powf(1.0 / (k1 as f64 - 1.0))).min(1.0)
    };
    let target_steps = (p * nm).floor() as usize;
    let cap = config.budget.map_or(target_steps, |b| b.min(target_steps));
    let trace = greedy_independent_set(&hat, substream_seed(seed, &[tag("greedy")]), Some(cap))?;
    let steps_run = trace.i_max;

    // split Î by column
    let mut columns: Vec<Vec<bool>> = vec![vec![false; n]; m];
    for &x in &trace.independent_set {
        columns[x as usize % m][x as usize / m] = true;
    }
    let mut cycle_deletions = 0;
    let mut best: (usize, Vec<Vertex>) = (0, Vec::new());
    for (j, col) in columns.iter_mut().enumerate() {
        cycle_deletions += break_short_cycles(g, k2, col);
        let chosen = degree_greedy(g, col);
        if chosen.len() > best.1.len() {
            best = (j, chosen);
        }
    }
    let (column, set) = best;
    let independent_in_h = h.is_independent(&set);
    let independent_in_g = g.is_independent(&set);
    if !(independent_in_h && independent_in_g) {
        return Err(Error::Verification(format!(
            "pipeline output independent in H: {independent_in_h}, in G: {independent_in_g}"
        )));
    }
    Ok(PipelineResult {
        independent_set: set,
        column,
        d,
        m,
        p,
        target_steps,
        steps_run,
        shortfall: steps_run < cap,
        budget_exhausted: cap < target_steps,
        cycle_deletions,
        independent_in_h,
        independent_in_g,
    })
}

/// Deletes the lowest vertex of each pair of `G`-edges inside `col` that meet
/// in `2..k2-1` vertices. Returns the number of deletions.
fn break_short_cycles(g: &Hypergraph, k2: usize, col: &mut [bool]) -> usize {
    if k2 < 3 {
        return 0;
    }
    let inside = |e: &[Vertex], col: &[bool]| e.iter().all(|&v| col[v as usize]);
    let present: Vec<usize> = (0..g.len()).filter(|&i| inside(g.edge(i), col)).collect();
    let mut deletions = 0;
    for (x, &a) in present.iter().enumerate() {
        for &b in &present[x + 1..] {
            let (ea, eb) = (g.edge(a), g.edge(b));
            let s = intersection_size(ea, eb);
            if (2..k2).contains(&s) && inside(ea, col) && inside(eb, col) {
                let low = ea[0].min(eb[0]);
                col[low as usize] = false;
                deletions += 1;
            }
        }
    }
    deletions
}

/// Scans vertices of `col` by ascending degree in `G[col]` (ties by index),
/// keeping each one that completes no edge.
fn degree_greedy(g: &Hypergraph, col: &[bool]) -> Vec<Vertex> {
    let n = col.len();
    let mut deg = vec![0usize; n];
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        if e.iter().all(|&v| col[v as usize]) {
            for &v in e {
                deg[v as usize] += 1;
                through[v as usize].push(i);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&v| col[v]).collect();
    order.sort_by_key(|&v| (deg[v], v));
    let mut taken = vec![false; n];
    for v in order {
        let blocked = through[v]
            .iter()
            .any(|&i| g.edge(i).iter().all(|&u| u as usize == v || taken[u as usize]));
        if !blocked {
            taken[v] = true;
        }
    }
    (0..n as Vertex).filter(|&v| taken[v as usize]).collect()
}
