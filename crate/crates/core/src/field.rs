//! Prime-field polynomials and the polynomial incidence graph.
//!
//! The left side of the graph is every polynomial of degree at most `l-1`
//! over GF(q); the right side is the plane GF(q) x GF(q), point `(x, y)`
//! flattened to `x * q + y`. A polynomial is joined to every point on its
//! graph.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Left-vertex ceiling for [`build_polynomial_graph`].
pub const MAX_POLYNOMIALS: u64 = 4_000_000;
/// Edge ceiling for [`build_polynomial_graph`].
pub const MAX_INCIDENCES: u64 = 60_000_000;

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime that is at least `q`.
pub fn next_prime(mut q: u64) -> u64 {
    while !is_prime(q) {
        q += 1;
    }
    q
}

/// Polynomial over GF(q); `coeffs[j]` multiplies `x^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPoly {
    q: u64,
    coeffs: Vec<u64>,
}

impl FieldPoly {
    pub fn new(q: u64, coeffs: Vec<u64>) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::UnsupportedModulus(q));
        }
        Ok(FieldPoly { q, coeffs: coeffs.into_iter().map(|c| c % q).collect() })
    }

    /// The `index`-th polynomial of length `len` in lexicographic
    /// coefficient order (constant term most significant).
    pub fn from_index(q: u64, len: usize, mut index: u64) -> Self {
        let mut coeffs = vec![0; len];
        for c in coeffs.iter_mut().rev() {
            *c = index % q;
            index /= q;
        }
        FieldPoly { q, coeffs }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: u64) -> Result<u64> {
        if x >= self.q {
            return invalid(format!("point {x} is outside GF({})", self.q));
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x + c) % self.q)
    }
}

/// Bipartite graph stored as sorted left adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    m: usize,
    n_right: usize,
    adjacency: Vec<Vec<u32>>,
}

impl BipartiteGraph {
    pub fn new(m: usize, n_right: usize, mut adjacency: Vec<Vec<u32>>) -> Result<Self> {
        if adjacency.len() != m {
            return invalid(format!("{} adjacency lists for {m} left vertices", adjacency.len()));
        }
        for (u, nb) in adjacency.iter_mut().enumerate() {
            nb.sort_unstable();
            if nb.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("left vertex {u} lists a neighbor twice"));
            }
            if nb.last().is_some_and(|&v| v as usize >= n_right) {
                return invalid(format!("left vertex {u} has a neighbor out of range"));
            }
        }
        Ok(BipartiteGraph { m, n_right, adjacency })
    }

    pub fn from_edges(m: usize, n_right: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); m];
        for &(u, v) in edges {
            adj.get_mut(u as usize)
                .ok_or_else(|| Error::InvalidInput(format!("left vertex {u} out of range")))?
                .push(v);
        }
        Self::new(m, n_right, adj)
    }

    pub fn complete(m: usize, n_right: usize) -> Self {
        let row: Vec<u32> = (0..n_right as u32).collect();
        BipartiteGraph { m, n_right, adjacency: vec![row; m] }
    }

    pub fn left_size(&self) -> usize {
        self.m
    }

    pub fn right_size(&self) -> usize {
        self.n_right
    }

    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.adjacency[u]
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().map(move |&v| (u as u32, v)))
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n_right];
        for nb in &self.adjacency {
            for &v in nb {
                d[v as usize] += 1;
            }
        }
        d
    }

    /// Common left degree, if every left vertex has the same degree.
    pub fn left_regular(&self) -> Option<usize> {
        common_value(&self.left_degrees())
    }

    pub fn right_regular(&self) -> Option<usize> {
        common_value(&self.right_degrees())
    }

    /// `(d1, d2)` when the graph is biregular.
    pub fn biregular(&self) -> Option<(usize, usize)> {
        Some((self.left_regular()?, self.right_regular()?))
    }

    pub fn common_neighbors(&self, a: usize, b: usize) -> Vec<u32> {
        crate::hypergraph::subsets::intersection(&self.adjacency[a], &self.adjacency[b])
    }

    /// e(X, Y): edges with left end in `xs` and right end in `ys`.
    pub fn edges_between(&self, xs: &[u32], ys: &[u32]) -> usize {
        let mut in_y = vec![false; self.n_right];
        for &y in ys {
            in_y[y as usize] = true;
        }
        xs.iter()
            .map(|&x| self.adjacency[x as usize].iter().filter(|&&v| in_y[v as usize]).count())
            .sum()
    }

    /// Dense biadjacency matrix, row-major `m x n_right`.
    pub fn biadjacency(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0u8; self.n_right]; self.m];
        for (u, nb) in self.adjacency.iter().enumerate() {
            for &v in nb {
                a[u][v as usize] = 1;
            }
        }
        a
    }
}

fn common_value(xs: &[usize]) -> Option<usize> {
    match xs.first() {
        None => Some(0),
        Some(&d) => xs.iter().all(|&x| x == d).then_some(d),
    }
}

/// The bipartite graph between polynomials of degree at most `l-1` over
/// GF(q) and the points of GF(q)^2, with `P ~ (x, y)` iff `y = P(x)`.
pub fn build_polynomial_graph(q: u64, l: usize) -> Result<BipartiteGraph> {
    if !is_prime(q) {
        return Err(Error::UnsupportedModulus(q));
    }
    if l == 0 {
        return invalid("polynomial length l must be at least 1");
    }
    let m = q
        .checked_pow(l as u32)
        .filter(|&m| m <= MAX_POLYNOMIALS && m.saturating_mul(q) <= MAX_INCIDENCES)
        .ok_or_else(|| Error::InvalidInput(format!("q^l = {q}^{l} exceeds the memory budget")))?;
    let right = (q * q) as usize;
    let adjacency = (0..m)
        .map(|idx| {
            let p = FieldPoly::from_index(q, l, idx);
            (0..q).map(|x| (x * q + p.eval_unchecked(x)) as u32).collect()
        })
        .collect();
    Ok(BipartiteGraph { m: m as usize, n_right: right, adjacency })
}

/// Two left vertices together with `l` of their common neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K2lWitness {
    pub left: (u32, u32),
    pub right: Vec<u32>,
}

/// Exhaustive search for a complete bipartite K_{2,l} with both left
/// vertices in the left part.
pub fn k2l_free_check(g: &BipartiteGraph, l: usize) -> Option<K2lWitness> {
    for a in 0..g.left_size() {
        for b in a + 1..g.left_size() {
            let common = g.common_neighbors(a, b);
            if common.len() >= l {
                return Some(K2lWitness {
                    left: (a as u32, b as u32),
                    right: common[..l].to_vec(),
                });
            }
        }
    }
    None
}

/// `BIPARTITE m n_right e` header followed by one `left right` pair per line.
pub fn to_bipartite_text(g: &BipartiteGraph) -> String {
    let mut out = String::new();
    writeln!(out, "BIPARTITE {} {} {}", g.m, g.n_right, g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn from_bipartite_text(text: &str) -> Result<BipartiteGraph> {
    let perr = |line: usize, message: &str| Error::Parse { line, message: message.to_string() };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing BIPARTITE header"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "BIPARTITE" {
        return Err(perr(hl, "header must be `BIPARTITE m n_right e`"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| perr(hl, "bad header number"));
    let (m, n_right, e) = (num(parts[1])?, num(parts[2])?, num(parts[3])?);
    let mut adj = vec![Vec::new(); m];
    let mut count = 0;
    let mut last = hl;
    for (lno, line) in lines {
        last = lno;
        let p: Vec<&str> = line.split_whitespace().collect();
        if p.len() != 2 {
            return Err(perr(lno, "expected `left right`"));
        }
        let u: usize = p[0].parse().map_err(|_| perr(lno, "bad left vertex"))?;
        let v: u32 = p[1].parse().map_err(|_| perr(lno, "bad right vertex"))?;
        if u >= m || v as usize >= n_right {
            return Err(perr(lno, "vertex out of range"));
        }
        adj[u].push(v);
        count += 1;
    }
    if count != e {
        return Err(perr(last, "edge count does not match header"));
    }
    BipartiteGraph::new(m, n_right, adj).map_err(|err| perr(last, &err.to_string()))
}
