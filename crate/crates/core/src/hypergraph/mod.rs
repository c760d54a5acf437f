//! Hypergraph representation and structural statistics.
//!
//! Vertices are `u32` labels in `0..n`. Edges are stored as sorted,
//! duplicate-free vertex lists in insertion order; repeated edges are
//! collapsed on construction and counted. When `n` is at most the mask
//! threshold every edge also carries a `u128` bit mask, which the
//! intersection-heavy loops use.

pub mod io;
pub mod subsets;

use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::scalar::Scalar;
use subsets::{for_each_subset, intersection_size};

pub type Vertex = u32;

/// Default vertex-count ceiling for the cached bit-mask representation.
pub const DEFAULT_MASK_THRESHOLD: usize = 128;

#[derive(Clone, Debug)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<Vertex>>,
    uniform_k: Option<usize>,
    masks: Option<Vec<u128>>,
    collapsed: usize,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical_edges() == other.canonical_edges()
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge and collapsing repeated edges.
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        Self::build(n, None, edges)
    }

    /// Like [`Hypergraph::new`] but every edge must have exactly `k`
    /// vertices; the uniformity is recorded even when there are no edges.
    pub fn with_uniformity<I, E>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        if k < 2 {
            return invalid(format!("uniformity {k} is below 2"));
        }
        Self::build(n, Some(k), edges)
    }

    pub fn empty(n: usize) -> Self {
        Self::build(n, None, Vec::<Vec<Vertex>>::new()).expect("empty hypergraph is valid")
    }

    pub fn empty_uniform(n: usize, k: usize) -> Result<Self> {
        Self::with_uniformity(n, k, Vec::<Vec<Vertex>>::new())
    }

    fn build<I, E>(n: usize, declared_k: Option<usize>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        if n > u32::MAX as usize {
            return invalid("vertex count exceeds u32 range");
        }
        let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
        let mut out = Vec::new();
        let mut collapsed = 0;
        for e in edges {
            let mut e: Vec<Vertex> = e.into();
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("edge {e:?} repeats a vertex"));
            }
            if e.len() < 2 {
                return invalid(format!("edge {e:?} has fewer than 2 vertices"));
            }
            if let Some(&v) = e.last() {
                if v as usize >= n {
                    return invalid(format!("vertex {v} out of range for n = {n}"));
                }
            }
            if let Some(k) = declared_k {
                if e.len() != k {
                    return invalid(format!("edge {e:?} has size {} but k = {k}", e.len()));
                }
            }
            if seen.insert(e.clone()) {
                out.push(e);
            } else {
                collapsed += 1;
            }
        }
        let uniform_k = match declared_k {
            Some(k) => Some(k),
            None => {
                let k = out.first().map(Vec::len);
                if out.iter().all(|e| Some(e.len()) == k) {
                    k
                } else {
                    None
                }
            }
        };
        let mut h = Hypergraph { n, edges: out, uniform_k, masks: None, collapsed };
        h.rebuild_masks(DEFAULT_MASK_THRESHOLD);
        Ok(h)
    }

    /// Changes the vertex-count ceiling for the bit-mask cache (at most 128).
    pub fn with_mask_threshold(mut self, threshold: usize) -> Self {
        self.rebuild_masks(threshold.min(128));
        self
    }

    fn rebuild_masks(&mut self, threshold: usize) {
        self.masks = (self.n <= threshold.min(128)).then(|| {
            self.edges
                .iter()
                .map(|e| e.iter().fold(0u128, |m, &v| m | (1u128 << v)))
                .collect()
        });
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.edges[i]
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn uniform_k(&self) -> Option<usize> {
        self.uniform_k
    }

    /// Number of repeated edges dropped while building.
    pub fn collapsed_duplicates(&self) -> usize {
        self.collapsed
    }

    pub fn masks(&self) -> Option<&[u128]> {
        self.masks.as_deref()
    }

    /// Edges sorted lexicographically; the canonical order used by writers.
    pub fn canonical_edges(&self) -> Vec<Vec<Vertex>> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    pub(crate) fn require_uniform(&self, op: &str) -> Result<usize> {
        match self.uniform_k {
            Some(k) => Ok(k),
            None if self.edges.is_empty() => invalid(format!(
                "{op}: empty hypergraph without a declared uniformity"
            )),
            None => invalid(format!("{op} needs a uniform hypergraph")),
        }
    }

    fn check_vertices(&self, s: &[Vertex]) -> Result<()> {
        if let Some(&v) = s.iter().find(|&&v| v as usize >= self.n) {
            return invalid(format!("vertex {v} out of range for n = {}", self.n));
        }
        Ok(())
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v as usize] += 1;
            }
        }
        d
    }

    /// Vertex-to-edge incidence lists.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v as usize].push(i);
            }
        }
        inc
    }

    /// d_H(S) by direct scan over the edges.
    pub fn degree_of(&self, s: &[Vertex]) -> usize {
        let mut s = s.to_vec();
        s.sort_unstable();
        self.edges.iter().filter(|e| subsets::is_subset(&s, e)).count()
    }

    pub fn max_degree(&self) -> usize {
        self.vertex_degrees().into_iter().max().unwrap_or(0)
    }

    /// Index of some edge lying entirely inside `set`, if any.
    pub fn edge_inside(&self, set: &[Vertex]) -> Option<usize> {
        if let (Some(masks), true) = (&self.masks, set.iter().all(|&v| (v as usize) < self.n)) {
            let m = set.iter().fold(0u128, |m, &v| m | (1u128 << v));
            return masks.iter().position(|&e| e & m == e);
        }
        let mut inside = vec![false; self.n];
        for &v in set {
            if let Some(slot) = inside.get_mut(v as usize) {
                *slot = true;
            }
        }
        self.edges
            .iter()
            .position(|e| e.iter().all(|&v| inside[v as usize]))
    }

    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        self.edge_inside(set).is_none()
    }

    /// Independent, and adding any outside vertex would complete an edge.
    pub fn is_maximal_independent(&self, set: &[Vertex]) -> bool {
        if !self.is_independent(set) {
            return false;
        }
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v as usize] = true;
        }
        let mut blocked = vec![false; self.n];
        for e in &self.edges {
            let mut outside = e.iter().filter(|&&v| !inside[v as usize]);
            if let (Some(&w), None) = (outside.next(), outside.next()) {
                blocked[w as usize] = true;
            }
        }
        (0..self.n).all(|v| inside[v] || blocked[v])
    }

    /// Number of edges of `self` contained in `set`.
    pub fn edges_inside(&self, set: &[Vertex]) -> usize {
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v as usize] = true;
        }
        self.edges
            .iter()
            .filter(|e| e.iter().all(|&v| inside[v as usize]))
            .count()
    }

    /// L_H(S). Residues with at most one vertex cannot be edges and are
    /// only counted.
    pub fn link(&self, s: &[Vertex]) -> Result<Link> {
        self.check_vertices(s)?;
        let mut s = s.to_vec();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return invalid("link set repeats a vertex");
        }
        let mut residues = Vec::new();
        let mut small_edges = 0;
        for e in &self.edges {
            if subsets::is_subset(&s, e) {
                let r: Vec<Vertex> = e.iter().copied().filter(|v| s.binary_search(v).is_err()).collect();
                if r.len() >= 2 {
                    residues.push(r);
                } else {
                    small_edges += 1;
                }
            }
        }
        let hypergraph = Hypergraph::new(self.n, residues)?;
        Ok(Link { hypergraph, small_edges })
    }

    /// The i-th shadow: all (k-i)-subsets of edges.
    pub fn shadow(&self, i: usize) -> Result<Hypergraph> {
        if i == 0 {
            return invalid("shadow index must be positive");
        }
        if self.edges.is_empty() && self.uniform_k.is_none() {
            return Ok(Hypergraph::empty(self.n));
        }
        let k = self.require_uniform("shadow")?;
        if k < i + 2 {
            return invalid(format!("shadow {i} of a {k}-graph has edges below size 2"));
        }
        let mut out = Vec::new();
        for e in &self.edges {
            for_each_subset(e, k - i, |s| out.push(s.to_vec()));
        }
        let mut h = Hypergraph::with_uniformity(self.n, k - i, out)?;
        h.collapsed = 0;
        Ok(h)
    }

    pub fn degree_profile(&self) -> Result<DegreeReport> {
        let k = self.require_uniform("degree_profile")?;
        let mut max_i_degree = BTreeMap::new();
        for i in 1..k {
            let mut counts: HashMap<Vec<Vertex>, usize> = HashMap::new();
            for e in &self.edges {
                for_each_subset(e, i, |s| *counts.entry(s.to_vec()).or_insert(0) += 1);
            }
            max_i_degree.insert(i, counts.values().copied().max().unwrap_or(0));
        }
        // (k-1)-codegree: group edges by their (k-1)-subsets; every pair of
        // completing vertices of one group shares that subset.
        let mut completions: HashMap<Vec<Vertex>, Vec<Vertex>> = HashMap::new();
        for e in &self.edges {
            for (j, &v) in e.iter().enumerate() {
                let mut s = e.clone();
                s.remove(j);
                completions.entry(s).or_default().push(v);
            }
        }
        let mut pair_counts: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        for c in completions.values() {
            for a in 0..c.len() {
                for b in a + 1..c.len() {
                    let key = (c[a].min(c[b]), c[a].max(c[b]));
                    *pair_counts.entry(key).or_insert(0) += 1;
                }
            }
        }
        let codegree_max = pair_counts.values().copied().max().unwrap_or(0);
        let average_degree = if self.n == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new((k * self.edges.len()) as u64, self.n as u64)
        };
        Ok(DegreeReport {
            max_degree: max_i_degree.get(&1).copied().unwrap_or(0),
            max_i_degree,
            codegree_max,
            average_degree,
        })
    }

    /// Pairwise intersection-size census. Intersecting pairs are found by
    /// grouping edges around each shared vertex and counting each pair at
    /// its smallest common vertex; disjoint pairs are the remainder.
    pub fn cycle_census(&self) -> Result<CycleCensus> {
        let k = self.require_uniform("cycle_census")?;
        let mut counts = vec![0u64; k];
        let inc = self.incidence();
        for (v, list) in inc.iter().enumerate() {
            for a in 0..list.len() {
                for b in a + 1..list.len() {
                    let (ea, eb) = (&self.edges[list[a]], &self.edges[list[b]]);
                    let first_common = first_common(ea, eb);
                    if first_common == Some(v as Vertex) {
                        counts[intersection_size(ea, eb)] += 1;
                    }
                }
            }
        }
        let m = self.edges.len() as u64;
        let total = m * m.saturating_sub(1) / 2;
        let intersecting: u64 = counts.iter().sum();
        counts[0] = total - intersecting;
        Ok(CycleCensus { counts })
    }

    /// Sub-hypergraph induced on `u`, relabeled to `0..|u|` in increasing order.
    pub fn induced(&self, u: &[Vertex]) -> Result<Hypergraph> {
        self.check_vertices(u)?;
        let mut u = u.to_vec();
        u.sort_unstable();
        u.dedup();
        let mut relabel = vec![u32::MAX; self.n];
        for (i, &v) in u.iter().enumerate() {
            relabel[v as usize] = i as Vertex;
        }
        let edges: Vec<Vec<Vertex>> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| relabel[v as usize] != u32::MAX))
            .map(|e| e.iter().map(|&v| relabel[v as usize]).collect())
            .collect();
        match self.uniform_k {
            Some(k) => Hypergraph::with_uniformity(u.len(), k, edges),
            None => Hypergraph::new(u.len(), edges),
        }
    }

    /// Union of edge sets over the same vertex universe.
    pub fn union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.n != other.n {
            return invalid("union of hypergraphs on different vertex counts");
        }
        Hypergraph::new(self.n, self.edges.iter().chain(other.edges.iter()).cloned())
    }

    pub fn regularity_audit<T: Scalar>(&self, c: T, d1: T, d2: T) -> RegularityAudit {
        let within = |x: usize, d: T| {
            let x = T::from_count(x);
            d / c <= x && x <= c * d
        };
        let offending_edges: Vec<usize> = (0..self.edges.len())
            .filter(|&i| !within(self.edges[i].len(), d1))
            .collect();
        let offending_vertices: Vec<Vertex> = self
            .vertex_degrees()
            .into_iter()
            .enumerate()
            .filter(|&(_, d)| !within(d, d2))
            .map(|(v, _)| v as Vertex)
            .collect();
        RegularityAudit {
            uniform: offending_edges.is_empty(),
            regular: offending_vertices.is_empty(),
            offending_edges,
            offending_vertices,
        }
    }
}

fn first_common(a: &[Vertex], b: &[Vertex]) -> Option<Vertex> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(a[i]),
        }
    }
    None
}

/// H □ F: `h` on `[n]` with one `m`-vertex hypergraph per vertex of `h`.
/// Vertex `(i, v)` is flattened to `i * m + v`.
pub fn cartesian_product(h: &Hypergraph, family: &[Hypergraph]) -> Result<Hypergraph> {
    if family.len() != h.n() {
        return invalid(format!(
            "product needs {} factor hypergraphs, got {}",
            h.n(),
            family.len()
        ));
    }
    let m = family.first().map_or(0, Hypergraph::n);
    if family.iter().any(|f| f.n() != m) {
        return invalid("product factors must share one vertex count");
    }
    let flat = |i: Vertex, v: Vertex| i * m as Vertex + v;
    let mut edges = Vec::with_capacity(h.len() * m + family.iter().map(Hypergraph::len).sum::<usize>());
    for e in h.edges() {
        for v in 0..m as Vertex {
            edges.push(e.iter().map(|&i| flat(i, v)).collect::<Vec<_>>());
        }
    }
    for (i, f) in family.iter().enumerate() {
        for fe in f.edges() {
            edges.push(fe.iter().map(|&v| flat(i as Vertex, v)).collect::<Vec<_>>());
        }
    }
    Hypergraph::new(h.n() * m, edges)
}

/// Result of [`Hypergraph::link`].
#[derive(Clone, Debug)]
pub struct Link {
    pub hypergraph: Hypergraph,
    /// Residues of size 0 or 1.
    pub small_edges: usize,
}

impl Link {
    pub fn degree(&self) -> usize {
        self.hypergraph.len() + self.small_edges
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeReport {
    /// Δ_i for 1 ≤ i ≤ k-1.
    pub max_i_degree: BTreeMap<usize, usize>,
    /// Γ(H), the maximum (k-1)-codegree.
    pub codegree_max: usize,
    pub average_degree: Ratio<u64>,
    pub max_degree: usize,
}

impl DegreeReport {
    pub fn average_degree_f64(&self) -> f64 {
        *self.average_degree.numer() as f64 / *self.average_degree.denom() as f64
    }
}

/// Pair counts by intersection size: `counts[j]` = C_H(2, j), 0 ≤ j ≤ k-1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub counts: Vec<u64>,
}

impl CycleCensus {
    pub fn is_linear(&self) -> bool {
        self.counts.iter().skip(2).all(|&c| c == 0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityAudit {
    pub uniform: bool,
    pub regular: bool,
    pub offending_edges: Vec<usize>,
    pub offending_vertices: Vec<Vertex>,
}

#[cfg(test)]
mod tests;
