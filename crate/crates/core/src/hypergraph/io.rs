//! Edge-list text format.
//!
//! ```text
//! # optional comments
//! n m
//! v v v ...      (m lines, 0-based, ascending)
//! ```
//!
//! The writer emits edges in lexicographic order so that equal hypergraphs
//! serialize to identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use super::{Hypergraph, Vertex};
use crate::error::{Error, Result};

pub fn to_edge_list(h: &Hypergraph) -> String {
    let edges = h.canonical_edges();
    let mut out = String::with_capacity(16 + edges.len() * 8);
    writeln!(out, "{} {}", h.n(), edges.len()).unwrap();
    for e in &edges {
        let mut first = true;
        for v in e {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn from_edge_list(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    if nums.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n: usize = nums[0].parse().map_err(|_| parse_err(hline, "bad vertex count"))?;
    let m: usize = nums[1].parse().map_err(|_| parse_err(hline, "bad edge count"))?;

    let mut edges: Vec<Vec<Vertex>> = Vec::with_capacity(m);
    let mut last_line = hline;
    for (lno, line) in lines {
        last_line = lno;
        let mut e = Vec::new();
        for tok in line.split_whitespace() {
            let v: Vertex = tok
                .parse()
                .map_err(|_| parse_err(lno, format!("bad vertex `{tok}`")))?;
            if v as usize >= n {
                return Err(parse_err(lno, format!("vertex {v} out of range for n = {n}")));
            }
            e.push(v);
        }
        let mut sorted = e.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != e.len() {
            return Err(parse_err(lno, "edge repeats a vertex"));
        }
        if e.len() < 2 {
            return Err(parse_err(lno, "edge has fewer than 2 vertices"));
        }
        edges.push(sorted);
    }
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Hypergraph::new(n, edges)
}

pub fn write_edge_list(h: &Hypergraph, path: &Path) -> Result<()> {
    std::fs::write(path, to_edge_list(h))?;
    Ok(())
}

pub fn read_edge_list(path: &Path) -> Result<Hypergraph> {
    from_edge_list(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn writes_lexicographic_order() {
        let h = Hypergraph::new(5, vec![vec![3u32, 4], vec![0, 2, 1]]).unwrap();
        assert_eq!(to_edge_list(&h), "5 2\n0 1 2\n3 4\n");
    }

    #[test]
    fn reads_comments_and_unsorted_lines() {
        let h = from_edge_list("# hi\n4 2\n# mid\n2 0 1\n\n1 3\n").unwrap();
        assert_eq!(h.canonical_edges(), vec![vec![0, 1, 2], vec![1, 3]]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = from_edge_list("3 1\n0 7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = from_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = from_edge_list("# only comment\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = from_edge_list("3 1\n1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = from_edge_list("x 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    proptest! {
        #[test]
        fn round_trip(n in 2usize..12, raw in proptest::collection::vec(proptest::collection::btree_set(0u32..12, 2..5), 0..20)) {
            let edges: Vec<Vec<u32>> = raw
                .into_iter()
                .map(|s| s.into_iter().filter(|&v| (v as usize) < n).collect::<Vec<_>>())
                .filter(|e| e.len() >= 2)
                .collect();
            let h = Hypergraph::new(n, edges).unwrap();
            let text = to_edge_list(&h);
            let back = from_edge_list(&text).unwrap();
            prop_assert_eq!(&back, &h);
            prop_assert_eq!(to_edge_list(&back), text);
        }
    }
}
