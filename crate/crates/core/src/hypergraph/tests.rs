use super::subsets::subsets;
use super::*;
use proptest::prelude::*;

fn h(n: usize, edges: &[&[u32]]) -> Hypergraph {
    Hypergraph::new(n, edges.iter().map(|e| e.to_vec())).unwrap()
}

fn complete(n: usize, k: usize) -> Hypergraph {
    let all: Vec<u32> = (0..n as u32).collect();
    Hypergraph::with_uniformity(n, k, subsets(&all, k)).unwrap()
}

fn matching(n: usize, k: usize) -> Hypergraph {
    let edges: Vec<Vec<u32>> = (0..n / k)
        .map(|b| ((b * k) as u32..((b + 1) * k) as u32).collect())
        .collect();
    Hypergraph::with_uniformity(n, k, edges).unwrap()
}

/// Γ straight from the definition: every vertex pair, every (k-1)-set.
fn codegree_brute(g: &Hypergraph) -> usize {
    let k = g.uniform_k().unwrap();
    let all: Vec<u32> = (0..g.n() as u32).collect();
    let is_edge = |s: &[u32]| g.edges().iter().any(|e| e.as_slice() == s);
    let mut best = 0;
    for u in 0..g.n() as u32 {
        for v in u + 1..g.n() as u32 {
            let mut c = 0;
            for s in subsets(&all, k - 1) {
                let mut su = s.clone();
                let mut sv = s.clone();
                if s.contains(&u) || s.contains(&v) {
                    continue;
                }
                su.push(u);
                sv.push(v);
                su.sort_unstable();
                sv.sort_unstable();
                if is_edge(&su) && is_edge(&sv) {
                    c += 1;
                }
            }
            best = best.max(c);
        }
    }
    best
}

fn census_brute(g: &Hypergraph) -> Vec<u64> {
    let k = g.uniform_k().unwrap();
    let mut c = vec![0u64; k];
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            c[intersection_size(g.edge(a), g.edge(b))] += 1;
        }
    }
    c
}

#[test]
fn construction_rejects_bad_edges() {
    assert!(Hypergraph::new(3, vec![vec![0u32]]).is_err());
    assert!(Hypergraph::new(3, vec![vec![0u32, 3]]).is_err());
    assert!(Hypergraph::new(3, vec![vec![1u32, 1]]).is_err());
    assert!(Hypergraph::with_uniformity(4, 3, vec![vec![0u32, 1]]).is_err());
}

#[test]
fn duplicates_are_collapsed_and_counted() {
    let g = Hypergraph::new(4, vec![vec![2u32, 0, 1], vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
    assert_eq!(g.len(), 2);
    assert_eq!(g.collapsed_duplicates(), 1);
    assert_eq!(g.uniform_k(), Some(3));
    assert_eq!(g.edge(0), &[0, 1, 2]);
}

#[test]
fn mixed_sizes_are_not_uniform() {
    let g = h(4, &[&[0, 1], &[1, 2, 3]]);
    assert_eq!(g.uniform_k(), None);
    assert!(g.degree_profile().is_err());
    assert!(g.shadow(1).is_err());
}

#[test]
fn link_pair_core_leaves_small_residues() {
    let g = h(4, &[&[0, 1, 2], &[0, 1, 3]]);
    let l = g.link(&[0, 1]).unwrap();
    assert!(l.hypergraph.is_empty());
    assert_eq!(l.small_edges, 2);
    assert_eq!(l.degree(), 2);
}

#[test]
fn link_of_isolated_vertex_is_empty() {
    let g = h(4, &[&[0, 1, 2]]);
    let l = g.link(&[3]).unwrap();
    assert_eq!(l.degree(), 0);
    assert!(g.link(&[4]).is_err());
    assert!(g.link(&[1, 1]).is_err());
}

#[test]
fn link_of_sunflower_center_is_perfect_matching() {
    // S_3^3(1) with center 0 on 7 vertices
    let g = h(7, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
    let l = g.link(&[0]).unwrap();
    assert_eq!(l.small_edges, 0);
    assert_eq!(l.hypergraph.canonical_edges(), vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
}

#[test]
fn shadow_examples() {
    assert_eq!(h(4, &[&[0, 1, 2, 3]]).shadow(1).unwrap().len(), 4);
    let s = h(4, &[&[0, 1, 2], &[0, 1, 3]]).shadow(1).unwrap();
    assert_eq!(
        s.canonical_edges(),
        vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]
    );
    assert!(Hypergraph::empty(5).shadow(1).unwrap().is_empty());
    assert!(h(4, &[&[0, 1, 2]]).shadow(2).is_err());
}

#[test]
fn degree_profile_two_triples() {
    let g = h(4, &[&[0, 1, 2], &[0, 1, 3]]);
    let r = g.degree_profile().unwrap();
    assert_eq!(r.max_i_degree[&1], 2);
    assert_eq!(r.max_i_degree[&2], 2);
    assert_eq!(r.codegree_max, 1);
    assert_eq!(r.codegree_max, codegree_brute(&g));
    assert_eq!(r.max_degree, 2);
}

#[test]
fn degree_profile_matching() {
    let r = matching(6, 3).degree_profile().unwrap();
    assert_eq!(r.max_i_degree[&1], 1);
    assert_eq!(r.max_i_degree[&2], 1);
    assert_eq!(r.codegree_max, 0);
    assert_eq!(r.average_degree, Ratio::from_integer(1));
}

#[test]
fn degree_profile_complete_3_graph_on_4() {
    let g = complete(4, 3);
    let r = g.degree_profile().unwrap();
    assert_eq!(r.max_i_degree[&1], 3);
    assert_eq!(r.max_i_degree[&2], 2);
    assert_eq!(r.average_degree, Ratio::from_integer(3));
    // Only S = V \ {u, v} completes both u and v, so the codegree is 1.
    assert_eq!(codegree_brute(&g), 1);
    assert_eq!(r.codegree_max, 1);
}

#[test]
fn census_examples() {
    let c = h(4, &[&[0, 1, 2], &[0, 1, 3]]).cycle_census().unwrap();
    assert_eq!(c.counts, vec![0, 0, 1]);
    assert!(!c.is_linear());

    let c = matching(12, 3).cycle_census().unwrap();
    assert_eq!(c.counts, vec![6, 0, 0]);
    assert!(c.is_linear());

    let g = complete(4, 3);
    let c = g.cycle_census().unwrap();
    assert_eq!(c.counts, census_brute(&g));
    assert_eq!(c.counts, vec![0, 0, 6]);
}

#[test]
fn product_examples() {
    let base = h(2, &[&[0, 1]]);
    let p = cartesian_product(&base, &[Hypergraph::empty(2), Hypergraph::empty(2)]).unwrap();
    assert_eq!(p.n(), 4);
    assert_eq!(p.canonical_edges(), vec![vec![0, 2], vec![1, 3]]);

    let g = h(3, &[&[0, 1], &[1, 2]]);
    let p = cartesian_product(&Hypergraph::empty(2), &[g.clone(), g.clone()]).unwrap();
    assert_eq!(p.canonical_edges(), vec![vec![0, 1], vec![1, 2], vec![3, 4], vec![4, 5]]);

    let base = h(3, &[&[0, 1, 2]]);
    let m = h(2, &[&[0, 1]]);
    let p = cartesian_product(&base, &[m.clone(), m.clone(), m.clone()]).unwrap();
    assert_eq!(p.len(), 5);

    assert!(cartesian_product(&base, &[m.clone()]).is_err());
    assert!(cartesian_product(&base, &[m.clone(), m.clone(), Hypergraph::empty(3)]).is_err());
}

#[test]
fn induced_examples() {
    let g = h(3, &[&[0, 1, 2]]);
    assert_eq!(g.induced(&[0, 1, 2]).unwrap().len(), 1);
    assert_eq!(g.induced(&[0, 1]).unwrap().len(), 0);
    let k5 = complete(5, 3);
    let sub = k5.induced(&[0, 2, 3, 4]).unwrap();
    assert_eq!(sub, complete(4, 3));
    assert!(g.induced(&[5]).is_err());
}

#[test]
fn regularity_audit_examples() {
    let a = matching(6, 3).regularity_audit(1.0, 3.0, 1.0);
    assert!(a.uniform && a.regular);

    let g = h(8, &[&[0, 1], &[0, 1, 2, 3, 4, 5, 6, 7]]);
    // 4/2 = 2 and 2*4 = 8: both sizes are on the boundary
    assert!(g.regularity_audit(2.0, 4.0, 1.0).uniform);
    let a = g.regularity_audit(1.5, 4.0, 1.0);
    assert!(!a.uniform);
    assert_eq!(a.offending_edges, vec![0, 1]);
    // f32 path agrees
    assert!(!g.regularity_audit(1.5f32, 4.0, 1.0).uniform);
}

#[test]
fn independence_checks() {
    let g = h(4, &[&[0, 1], &[1, 2, 3]]);
    assert!(g.is_independent(&[0, 2, 3]));
    assert!(!g.is_independent(&[0, 1]));
    assert!(g.is_maximal_independent(&[0, 2, 3]));
    assert!(!g.is_maximal_independent(&[0, 2]));
    assert_eq!(g.edges_inside(&[0, 1, 2, 3]), 2);
    // the same answers without the mask cache
    let g = g.with_mask_threshold(0);
    assert!(g.masks().is_none());
    assert!(g.is_independent(&[0, 2, 3]));
    assert!(!g.is_independent(&[1, 2, 3]));
}

fn arb_uniform() -> impl Strategy<Value = Hypergraph> {
    (5usize..10, 2usize..5).prop_flat_map(|(n, k)| {
        let all: Vec<u32> = (0..n as u32).collect();
        let pool = subsets(&all, k);
        proptest::sample::subsequence(pool.clone(), 0..pool.len().min(25))
            .prop_map(move |edges| Hypergraph::with_uniformity(n, k, edges).unwrap())
    })
}

proptest! {
    #[test]
    fn link_degree_matches_scan(g in arb_uniform(), a in 0u32..5, b in 0u32..5) {
        let s: Vec<u32> = if a == b { vec![a] } else { vec![a, b] };
        prop_assert_eq!(g.link(&s).unwrap().degree(), g.degree_of(&s));
    }

    #[test]
    fn shadows_compose(g in arb_uniform()) {
        let k = g.uniform_k().unwrap();
        if k >= 4 {
            let two = g.shadow(2).unwrap();
            let one_one = g.shadow(1).unwrap().shadow(1).unwrap();
            prop_assert_eq!(two, one_one);
        }
    }

    #[test]
    fn census_matches_pairwise_scan(g in arb_uniform()) {
        let c = g.cycle_census().unwrap();
        let m = g.len() as u64;
        prop_assert_eq!(c.total(), m * m.saturating_sub(1) / 2);
        prop_assert_eq!(c.counts, census_brute(&g));
    }

    #[test]
    fn codegree_matches_definition(g in arb_uniform()) {
        prop_assert_eq!(g.degree_profile().unwrap().codegree_max, codegree_brute(&g));
    }

    #[test]
    fn induced_on_everything_is_identity(g in arb_uniform()) {
        let all: Vec<u32> = (0..g.n() as u32).collect();
        prop_assert_eq!(g.induced(&all).unwrap(), g);
    }

    #[test]
    fn product_degrees_add(base in arb_uniform(), f in arb_uniform()) {
        let family = vec![f.clone(); base.n()];
        let p = cartesian_product(&base, &family).unwrap();
        let (db, df, dp) = (base.vertex_degrees(), f.vertex_degrees(), p.vertex_degrees());
        let m = f.n();
        for i in 0..base.n() {
            for v in 0..m {
                prop_assert_eq!(dp[i * m + v], db[i] + df[v]);
            }
        }
        prop_assert_eq!(p.len(), base.len() * m + base.n() * f.len());
    }
}
