//! The random greedy independent set process.
//!
//! At each step a vertex `v` is drawn uniformly from the surviving vertex
//! set `V(i)`. Every `u` with `{u, v}` a current edge leaves `V` together
//! with all edges through it; then every remaining edge through `v` loses
//! `v`. Shrunken duplicates are merged.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::seed::substream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyStep {
    pub step: usize,
    pub vertex: Vertex,
    pub vertices_before: usize,
    pub edges_before: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
    /// Sorted chosen vertices.
    pub independent_set: Vec<Vertex>,
    pub i_max: usize,
    /// `false` when `stop_at` cut the run short.
    pub completed: bool,
}

impl GreedyTrace {
    /// Chosen vertices in pick order.
    pub fn order(&self) -> Vec<Vertex> {
        self.steps.iter().map(|s| s.vertex).collect()
    }

    /// The first `i` picks, sorted.
    pub fn prefix(&self, i: usize) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.steps.iter().take(i).map(|s| s.vertex).collect();
        v.sort_unstable();
        v
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,vertex,vertices_before,edges_before\n");
        for s in &self.steps {
            writeln!(out, "{},{},{},{}", s.step, s.vertex, s.vertices_before, s.edges_before).unwrap();
        }
        out
    }
}

struct Working {
    edges: Vec<Option<Vec<Vertex>>>,
    index: HashMap<Vec<Vertex>, usize>,
    through: Vec<Vec<usize>>,
    live: usize,
}

impl Working {
    fn new(h: &Hypergraph) -> Self {
        let mut w = Working {
            edges: Vec::with_capacity(h.len()),
            index: HashMap::with_capacity(h.len()),
            through: vec![Vec::new(); h.n()],
            live: 0,
        };
        for e in h.edges() {
            w.insert(e.clone());
        }
        w
    }

    fn insert(&mut self, e: Vec<Vertex>) {
        if self.index.contains_key(&e) {
            return;
        }
        let id = self.edges.len();
        for &v in &e {
            self.through[v as usize].push(id);
        }
        self.index.insert(e.clone(), id);
        self.edges.push(Some(e));
        self.live += 1;
    }

    fn remove(&mut self, id: usize) -> Option<Vec<Vertex>> {
        let e = self.edges[id].take()?;
        self.index.remove(&e);
        self.live -= 1;
        Some(e)
    }

    fn live_through(&mut self, v: Vertex) -> Vec<usize> {
        let edges = &self.edges;
        let list = &mut self.through[v as usize];
        list.retain(|&id| edges[id].as_ref().is_some_and(|e| e.binary_search(&v).is_ok()));
        list.clone()
    }
}

/// Runs the process to completion, or for `stop_at` steps.
pub fn greedy_independent_set(h: &Hypergraph, seed: u64, stop_at: Option<usize>) -> Result<GreedyTrace> {
    let mut rng = substream(seed, &[]);
    greedy_with_rng(h, &mut rng, stop_at)
}

pub fn greedy_with_rng(h: &Hypergraph, rng: &mut impl Rng, stop_at: Option<usize>) -> Result<GreedyTrace> {
    let n = h.n();
    let mut w = Working::new(h);
    let mut alive: Vec<Vertex> = (0..n as Vertex).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    let mut in_v = vec![true; n];
    let drop = |v: Vertex, alive: &mut Vec<Vertex>, pos: &mut Vec<usize>, in_v: &mut Vec<bool>| {
        let p = pos[v as usize];
        let last = *alive.last().unwrap();
        alive.swap_remove(p);
        if last != v {
            pos[last as usize] = p;
        }
        in_v[v as usize] = false;
    };

    let cap = stop_at.unwrap_or(usize::MAX);
    let mut steps = Vec::new();
    while !alive.is_empty() && steps.len() < cap {
        let v = alive[rng.gen_range(0..alive.len())];
        steps.push(GreedyStep { step: steps.len(), vertex: v, vertices_before: alive.len(), edges_before: w.live });

        let incident = w.live_through(v);
        let neighbors: Vec<Vertex> = incident
            .iter()
            .filter_map(|&id| match w.edges[id].as_deref() {
                Some(&[a, b]) => Some(if a == v { b } else { a }),
                _ => None,
            })
            .collect();
        for &u in &neighbors {
            for id in w.live_through(u) {
                w.remove(id);
            }
            drop(u, &mut alive, &mut pos, &mut in_v);
        }
        for id in w.live_through(v) {
            let e = w.remove(id).unwrap();
            debug_assert!(e.len() >= 3, "size-2 edges through v go with its neighbors");
            let shrunk: Vec<Vertex> = e.into_iter().filter(|&x| x != v).collect();
            w.insert(shrunk);
        }
        drop(v, &mut alive, &mut pos, &mut in_v);
    }

    let completed = alive.is_empty();
    let mut set: Vec<Vertex> = steps.iter().map(|s| s.vertex).collect();
    set.sort_unstable();
    let ok = h.is_independent(&set) && (!completed || h.is_maximal_independent(&set));
    if !ok {
        return Err(Error::Verification(format!(
            "greedy output fails {} check",
            if completed { "maximal independence" } else { "independence" }
        )));
    }
    Ok(GreedyTrace { i_max: steps.len(), steps, independent_set: set, completed })
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentEstimate {
    pub mean: f64,
    pub std_error: f64,
    /// `(i/n)^k' |G|`.
    pub benchmark: f64,
    pub trials: usize,
    /// Smallest step count any trial actually reached.
    pub min_reached: usize,
}

/// Monte Carlo estimate of `E |G[I(i)]|` over greedy runs on `h`; trial
/// `t` uses substream `t` of `seed`.
pub fn containment_probe(h: &Hypergraph, g: &Hypergraph, i: usize, trials: usize, seed: u64) -> Result<ContainmentEstimate> {
    if g.n() != h.n() {
        return crate::error::invalid("probe hypergraph must share the vertex set");
    }
    let kp = match g.uniform_k() {
        Some(k) => k,
        None if g.is_empty() => 0,
        None => return crate::error::invalid("probe hypergraph must be uniform"),
    };
    let runs: Vec<(usize, usize)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trace = greedy_with_rng(h, &mut substream(seed, &[t as u64]), Some(i))?;
            Ok((g.edges_inside(&trace.independent_set), trace.i_max))
        })
        .collect::<Result<_>>()?;
    let counts: Vec<f64> = runs.iter().map(|r| r.0 as f64).collect();
    let (mean, std_error) = mean_and_se(&counts);
    let n = h.n().max(1) as f64;
    Ok(ContainmentEstimate {
        mean,
        std_error,
        benchmark: (i as f64 / n).powi(kp as i32) * g.len() as f64,
        trials,
        min_reached: runs.iter().map(|r| r.1).min().unwrap_or(0),
    })
}

pub(crate) fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
