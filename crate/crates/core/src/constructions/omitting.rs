//! Randomized omitting systems: polynomial incidence hypergraph, vertex
//! subsampling, and a star-shaped fitting family realized on the traces.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::field::{build_polynomial_graph, is_prime, next_prime, BipartiteGraph};
use crate::hypergraph::subsets::{binomial_big, subsets};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::oracles::omitting_check;
use crate::seed::{substream, substream_seed, tag};

/// One edge per left vertex of `g`, namely its neighborhood. Identical
/// neighborhoods collapse to one edge (see `collapsed_duplicates`).
pub fn incidence_hypergraph(g: &BipartiteGraph) -> Result<Hypergraph> {
    if let Some(u) = (0..g.left_size()).find(|&u| g.neighbors(u).len() < 2) {
        return invalid(format!("left vertex {u} has degree below 2"));
    }
    Hypergraph::new(g.right_size(), g.adjacency().iter().cloned())
}

/// Inclusive acceptance bands for `|U|` and for each trace `|E ∩ U|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Windows {
    pub vertex: (f64, f64),
    pub trace: (f64, f64),
}

impl Windows {
    /// Factor-[1/2, 3/2] bands around the expected sizes `p n` and `p q`,
    /// for the incidence hypergraph of the degree-(l-1) polynomial graph.
    pub fn concentration(q: u64, l: usize) -> Self {
        let p = sampling_probability(q, l);
        let nu = p * (q * q) as f64;
        let tau = p * q as f64;
        Windows { vertex: (nu / 2.0, 1.5 * nu), trace: (tau / 2.0, 1.5 * tau) }
    }
}

fn within(x: usize, (lo, hi): (f64, f64)) -> bool {
    let x = x as f64;
    lo <= x && x <= hi
}

/// How `subsample_vertices` treats edges whose trace misses the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TraceWindowPolicy {
    /// Redraw `U` until every trace fits.
    Resample,
    /// Redraw only for the vertex window, then drop offending edges.
    Prune,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsampleResult {
    /// Sorted kept vertices.
    pub kept: Vec<Vertex>,
    pub p: f64,
    pub vertex_window: (f64, f64),
    pub degree_window: (f64, f64),
    pub rejected_rounds: usize,
    /// Indices of edges dropped under [`TraceWindowPolicy::Prune`].
    pub pruned_edges: Vec<usize>,
}

pub fn subsample_vertices(
    h: &Hypergraph,
    p: f64,
    windows: Windows,
    seed: u64,
    max_retries: usize,
    policy: TraceWindowPolicy,
) -> Result<SubsampleResult> {
    if !(p > 0.0 && p <= 1.0) {
        return invalid(format!("sampling probability {p} is outside (0, 1]"));
    }
    let mut in_u = vec![false; h.n()];
    for round in 0..=max_retries {
        let mut rng = substream(seed, &[round as u64]);
        let mut size = 0;
        for slot in in_u.iter_mut() {
            *slot = p >= 1.0 || rng.gen_bool(p);
            size += *slot as usize;
        }
        if !within(size, windows.vertex) {
            continue;
        }
        let bad: Vec<usize> = h
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| !within(e.iter().filter(|&&v| in_u[v as usize]).count(), windows.trace))
            .map(|(i, _)| i)
            .collect();
        if policy == TraceWindowPolicy::Resample && !bad.is_empty() {
            continue;
        }
        return Ok(SubsampleResult {
            kept: (0..h.n() as Vertex).filter(|&v| in_u[v as usize]).collect(),
            p,
            vertex_window: windows.vertex,
            degree_window: windows.trace,
            rejected_rounds: round,
            pruned_edges: bad,
        });
    }
    Err(Error::Sampling {
        retries: max_retries,
        reason: format!("no sample met the windows at p = {p}"),
    })
}

/// A k-graph per base edge plus the bijection placing it on that edge.
#[derive(Clone, Debug)]
pub struct FittingFamily {
    pub base: Hypergraph,
    pub members: Vec<Hypergraph>,
    /// `bijections[i][j]` is the member vertex assigned to the `j`-th
    /// (ascending) vertex of base edge `i`.
    pub bijections: Vec<Vec<u32>>,
}

impl FittingFamily {
    pub fn new(base: Hypergraph, members: Vec<Hypergraph>, bijections: Vec<Vec<u32>>) -> Result<Self> {
        if members.len() != base.len() || bijections.len() != base.len() {
            return invalid("fitting family needs one member and one bijection per base edge");
        }
        for (i, e) in base.edges().iter().enumerate() {
            if members[i].n() != e.len() {
                return invalid(format!("member {i} has {} vertices, edge has {}", members[i].n(), e.len()));
            }
            let mut seen = bijections[i].clone();
            seen.sort_unstable();
            if seen.iter().enumerate().any(|(j, &x)| x as usize != j) || seen.len() != e.len() {
                return invalid(format!("bijection {i} is not a permutation"));
            }
        }
        Ok(FittingFamily { base, members, bijections })
    }
}

/// Member `i` is every `k`-subset of `[m_i]` containing `[l+1]`, placed by a
/// uniform bijection drawn from the substream of edge rank `i`.
pub fn fitting_family_star(h: &Hypergraph, k: usize, l: usize, seed: u64) -> Result<FittingFamily> {
    if k < l + 1 || k < 2 {
        return invalid(format!("star member needs k >= max(l + 1, 2) (k={k}, l={l})"));
    }
    let mut cache: std::collections::HashMap<usize, Hypergraph> = Default::default();
    let mut members = Vec::with_capacity(h.len());
    let mut bijections = Vec::with_capacity(h.len());
    for (i, e) in h.edges().iter().enumerate() {
        let m = e.len();
        if m < k {
            return invalid(format!("edge {i} has {m} < k = {k} vertices"));
        }
        if let std::collections::hash_map::Entry::Vacant(slot) = cache.entry(m) {
            slot.insert(star_member(m, k, l)?);
        }
        members.push(cache[&m].clone());
        let mut psi: Vec<u32> = (0..m as u32).collect();
        psi.shuffle(&mut substream(seed, &[i as u64]));
        bijections.push(psi);
    }
    FittingFamily::new(h.clone(), members, bijections)
}

fn star_member(m: usize, k: usize, l: usize) -> Result<Hypergraph> {
    let rest: Vec<Vertex> = (l as Vertex + 1..m as Vertex).collect();
    let edges = subsets(&rest, k - l - 1).into_iter().map(|s| {
        let mut e: Vec<Vertex> = (0..=l as Vertex).collect();
        e.extend(s);
        e
    });
    Hypergraph::with_uniformity(m, k, edges)
}

/// H(F): a subset `S` of base edge `E_i` is an edge when `ψ_i(S)` is an
/// edge of member `i`.
pub fn realize(f: &FittingFamily) -> Result<Hypergraph> {
    let mut edges = Vec::new();
    for (i, e) in f.base.edges().iter().enumerate() {
        let mut inverse = vec![0 as Vertex; e.len()];
        for (j, &img) in f.bijections[i].iter().enumerate() {
            inverse[img as usize] = e[j];
        }
        for s in f.members[i].edges() {
            edges.push(s.iter().map(|&x| inverse[x as usize]).collect::<Vec<_>>());
        }
    }
    let k = f.members.first().and_then(Hypergraph::uniform_k);
    match k {
        Some(k) if f.members.iter().all(|g| g.uniform_k() == Some(k)) => Hypergraph::with_uniformity(f.base.n(), k, edges),
        _ => Hypergraph::new(f.base.n(), edges),
    }
}

/// Probability that a uniform `tau`-subset of `[m]` contains `[l+1]`.
pub fn p_tau(m: u64, l: u64, tau: u64) -> Result<BigRational> {
    if tau < l + 1 || tau > m {
        return invalid(format!("p_tau needs l + 1 <= tau <= m (m={m}, l={l}, tau={tau})"));
    }
    let num = binomial_big(m - l - 1, tau - l - 1);
    let den = binomial_big(m, tau);
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// `ceil(100 (ln n)^(1/l))`.
pub fn default_tau(n: usize, l: usize) -> usize {
    (100.0 * (n.max(1) as f64).ln().powf(1.0 / l.max(1) as f64)).ceil() as usize
}

fn sampling_probability(q: u64, l: usize) -> f64 {
    (q as f64).powf(-2.0 / (l as f64 + 1.0))
}

fn min_trace(q: u64, l: usize) -> f64 {
    (q as f64).powf((l as f64 - 1.0) / (l as f64 + 1.0)) / 2.0
}

/// Smallest prime `q` whose lower trace bound `q^((l-1)/(l+1)) / 2` is at
/// least `k`.
pub fn preflight_q(l: usize, k: usize) -> Result<u64> {
    if l < 2 {
        return invalid("the trace window grows with q only for l >= 2");
    }
    let guess = ((2 * k) as f64).powf((l as f64 + 1.0) / (l as f64 - 1.0)).floor() as u64;
    let mut q = next_prime(guess.saturating_sub(2).max(2));
    while min_trace(q, l) < k as f64 {
        q = next_prime(q + 1);
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct OmittingParams {
    pub q: u64,
    pub l: usize,
    pub k: usize,
    pub seed: u64,
    pub policy: TraceWindowPolicy,
    pub max_retries: usize,
}

impl OmittingParams {
    pub fn new(q: u64, l: usize, k: usize, seed: u64) -> Self {
        OmittingParams { q, l, k, seed, policy: TraceWindowPolicy::Prune, max_retries: 100 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OmittingBuild {
    #[serde(skip)]
    pub hypergraph: Hypergraph,
    pub params: OmittingParams,
    pub subsample: SubsampleResult,
    /// Edges of the incidence hypergraph before subsampling.
    pub base_edges: usize,
    /// Traces that received a fitting member.
    pub fitted_edges: usize,
    pub min_trace: usize,
    pub max_trace: usize,
    /// Realized edges that coincided across base edges.
    pub coincident_edges: usize,
    pub omitting_verified: bool,
}

pub fn omitting_system(q: u64, l: usize, k: usize, seed: u64) -> Result<OmittingBuild> {
    omitting_system_with(OmittingParams::new(q, l, k, seed))
}

/// Builds the polynomial incidence hypergraph, subsamples it, fits star
/// members on the traces and realizes them. The result lives on the kept
/// vertices, relabeled by rank.
pub fn omitting_system_with(params: OmittingParams) -> Result<OmittingBuild> {
    let OmittingParams { q, l, k, seed, policy, max_retries } = params;
    if l < 1 || k < l + 1 {
        return invalid(format!("omitting system needs l >= 1 and k >= l + 1 (l={l}, k={k})"));
    }
    if !is_prime(q) {
        return Err(Error::UnsupportedModulus(q));
    }
    if min_trace(q, l) < k as f64 {
        return invalid(format!(
            "trace lower bound {:.3} at q={q} is below k={k}; smallest feasible prime is {}",
            min_trace(q, l),
            preflight_q(l, k).map(|x| x.to_string()).unwrap_or_else(|_| "none".into())
        ));
    }
    let base = incidence_hypergraph(&build_polynomial_graph(q, l)?)?;
    let p = sampling_probability(q, l);
    let sub = subsample_vertices(
        &base,
        p,
        Windows::concentration(q, l),
        substream_seed(seed, &[tag("subsample")]),
        max_retries,
        policy,
    )?;

    let mut rank = vec![u32::MAX; base.n()];
    for (r, &v) in sub.kept.iter().enumerate() {
        rank[v as usize] = r as u32;
    }
    let mut pruned = sub.pruned_edges.iter().peekable();
    let mut traces = Vec::with_capacity(base.len() - sub.pruned_edges.len());
    for (i, e) in base.edges().iter().enumerate() {
        if pruned.peek() == Some(&&i) {
            pruned.next();
            continue;
        }
        traces.push(
            e.iter()
                .filter_map(|&v| (rank[v as usize] != u32::MAX).then_some(rank[v as usize]))
                .collect::<Vec<_>>(),
        );
    }
    let trace_h = Hypergraph::new(sub.kept.len(), traces)?;
    let sizes = trace_h.edges().iter().map(Vec::len);
    let (min_trace_seen, max_trace_seen) =
        sizes.fold((usize::MAX, 0), |(lo, hi), s| (lo.min(s), hi.max(s)));

    let family = fitting_family_star(&trace_h, k, l, substream_seed(seed, &[tag("psi")]))?;
    let h = realize(&family)?;
    if h.edges().iter().any(|e| e.len() != k) {
        return Err(Error::Verification("realized edge of wrong size".into()));
    }
    if let Some(w) = omitting_check(&h, l) {
        return Err(Error::Verification(format!("edges {:?} meet in exactly {l} vertices", w.edges)));
    }
    Ok(OmittingBuild {
        fitted_edges: trace_h.len(),
        coincident_edges: h.collapsed_duplicates(),
        hypergraph: h,
        params,
        subsample: sub,
        base_edges: base.len(),
        min_trace: if trace_h.is_empty() { 0 } else { min_trace_seen },
        max_trace: max_trace_seen,
        omitting_verified: true,
    })
}
