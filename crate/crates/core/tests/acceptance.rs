//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::Rng;

use omitlab::constructions::{fan, l_construction, omitting_system, preflight_q, random_omitting, regular_linear, sunflower};
use omitlab::harness::{run_experiment, ExperimentConfig};
use omitlab::hypergraph::subsets::{for_each_subset, intersection_size, is_subset};
use omitlab::oracles::{
    contains_fan, contains_sunflower, indecomposability_check, lambda_i, max_independent_set_exact, omitting_check,
    DEFAULT_BUDGET,
};
use omitlab::processes::{decompose, deletion_lower_bound, greedy_independent_set, greedy_matching, matching_floor};
use omitlab::seed::substream;
use omitlab::spectral::spectrum;
use omitlab::{build_polynomial_graph, Hypergraph, Vertex};

type Outcome = Result<String, String>;

const FIELDS: [(u64, usize); 4] = [(3, 2), (5, 2), (7, 2), (3, 3)];

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(t)
    } else {
        Err(format!("took {t:.2?}, limit {limit:?}"))
    }
}

fn expected_spectrum(q: u64, l: usize) -> Vec<f64> {
    let n = (q.pow(l as u32) + q * q) as usize;
    let top = (q as f64).powf(l as f64 / 2.0);
    let mid = (q as f64).powf((l as f64 - 1.0) / 2.0);
    let c = (q * q - q) as usize;
    let mut v = vec![top, -top];
    v.extend(std::iter::repeat(mid).take(c));
    v.extend(std::iter::repeat(-mid).take(c));
    v.resize(n, 0.0);
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

fn c1_spectrum() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (q, l) in FIELDS {
        let g = build_polynomial_graph(q, l).map_err(|e| e.to_string())?;
        let rep = spectrum::<f64>(&g, 1e-8).map_err(|e| e.to_string())?;
        let want = expected_spectrum(q, l);
        if rep.eigenvalues.len() != want.len() {
            return Err(format!("q={q} l={l}: {} eigenvalues, want {}", rep.eigenvalues.len(), want.len()));
        }
        let err = rep.eigenvalues.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        worst = worst.max(err);
        if err > 1e-8 {
            return Err(format!("q={q} l={l}: max eigenvalue error {err:e}"));
        }
    }
    let t = within(Duration::from_secs(10), start)?;
    Ok(format!("max error {worst:.1e}, {t:.2?}"))
}

fn c2_regularity() -> Outcome {
    let start = Instant::now();
    for (q, l) in FIELDS {
        let g = build_polynomial_graph(q, l).map_err(|e| e.to_string())?;
        let d2 = q.pow(l as u32 - 1) as usize;
        let mut right = vec![0usize; g.right_size()];
        for u in 0..g.left_size() {
            if g.neighbors(u).len() != q as usize {
                return Err(format!("q={q} l={l}: left vertex {u} has degree {}", g.neighbors(u).len()));
            }
            for &y in g.neighbors(u) {
                right[y as usize] += 1;
            }
        }
        if let Some(y) = right.iter().position(|&c| c != d2) {
            return Err(format!("q={q} l={l}: right vertex {y} has degree {}", right[y]));
        }
        let sets: Vec<HashSet<u32>> = (0..g.left_size()).map(|u| g.neighbors(u).iter().copied().collect()).collect();
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                if sets[a].intersection(&sets[b]).count() >= l {
                    return Err(format!("q={q} l={l}: left pair ({a},{b}) spans K_(2,{l})"));
                }
            }
        }
        if omitlab::field::k2l_free_check(&g, l).is_some() {
            return Err(format!("q={q} l={l}: library check reports a K_(2,l)"));
        }
    }
    let t = within(Duration::from_secs(5), start)?;
    Ok(format!("{t:.2?}"))
}

fn c3_mixing() -> Outcome {
    let start = Instant::now();
    let g = build_polynomial_graph(7, 2).map_err(|e| e.to_string())?;
    let lambda = spectrum::<f64>(&g, 1e-8).map_err(|e| e.to_string())?.lambda2;
    let (m, r) = (g.left_size(), g.right_size());
    let d1 = g.neighbors(0).len() as f64;
    let mut rng = substream(2024, &[3]);
    let mut violations = 0;
    for _ in 0..1000 {
        let a = rng.gen_range(1..=m);
        let b = rng.gen_range(1..=r);
        let xs = sample(&mut rng, m, a).into_vec();
        let ys: HashSet<usize> = sample(&mut rng, r, b).into_iter().collect();
        let e = xs.iter().map(|&x| g.neighbors(x).iter().filter(|&&y| ys.contains(&(y as usize))).count()).sum::<usize>();
        let gap = (e as f64 - d1 * (a * b) as f64 / r as f64).abs();
        if gap > lambda * ((a * b) as f64).sqrt() {
            violations += 1;
        }
    }
    let t = within(Duration::from_secs(5), start)?;
    if violations > 0 {
        return Err(format!("{violations} violations"));
    }
    Ok(format!("1000 pairs, lambda2 = {lambda:.6}, {t:.2?}"))
}

/// Edges sharing an `l`-subset, checked through an `l`-set index.
fn omitting_pair_by_index(h: &Hypergraph, l: usize) -> Option<(usize, usize)> {
    let mut by_set: HashMap<Vec<Vertex>, Vec<usize>> = HashMap::new();
    for (i, e) in h.edges().iter().enumerate() {
        for_each_subset(e, l, |s| by_set.entry(s.to_vec()).or_default().push(i));
    }
    for ids in by_set.values() {
        for (x, &a) in ids.iter().enumerate() {
            for &b in &ids[x + 1..] {
                if intersection_size(h.edge(a), h.edge(b)) == l {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

fn c4_omitting() -> Outcome {
    let (l, k) = (2, 3);
    let q = preflight_q(l, k).map_err(|e| e.to_string())?;
    let mut slowest = Duration::ZERO;
    let mut sizes = Vec::new();
    for seed in 0..10 {
        let start = Instant::now();
        let b = omitting_system(q, l, k, seed).map_err(|e| format!("seed {seed}: {e}"))?;
        let t = within(Duration::from_secs(60), start).map_err(|e| format!("seed {seed}: {e}"))?;
        slowest = slowest.max(t);
        if let Some(w) = omitting_check(&b.hypergraph, l) {
            return Err(format!("seed {seed}: omitting pair {:?}", w.edges));
        }
        if let Some(p) = omitting_pair_by_index(&b.hypergraph, l) {
            return Err(format!("seed {seed}: independent index finds pair {p:?}"));
        }
        sizes.push(b.hypergraph.len());
    }
    Ok(format!("q={q}, l={l}, k={k}: 10 builds, edges {sizes:?}, slowest {slowest:.2?}"))
}

/// Exhaustive α through subset masks, largest size first.
fn alpha_by_masks(h: &Hypergraph) -> usize {
    let n = h.n();
    assert!(n <= 24);
    let masks: Vec<u32> = h.edges().iter().map(|e| e.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
    let mut best = 0;
    for set in 0u32..(1u32 << n) {
        let c = set.count_ones() as usize;
        if c > best && masks.iter().all(|&e| set & e != e) {
            best = c;
        }
    }
    best
}

fn c5_ramsey() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (t, k) in [(5, 3), (6, 3), (7, 3), (6, 4)] {
        let (m, n) = (t / 2, (t - 1) / (2 * (k - 2)));
        let h = l_construction(m, n, k).map_err(|e| e.to_string())?;
        if contains_fan(&h, DEFAULT_BUDGET).map_err(|e| e.to_string())?.is_some() {
            return Err(format!("L_({m},{n}) for k={k} contains a fan"));
        }
        let alpha = max_independent_set_exact(&h, DEFAULT_BUDGET).map_err(|e| e.to_string())?.alpha;
        if alpha > t - 1 {
            return Err(format!("t={t} k={k}: alpha {alpha} > t-1"));
        }
        notes.push(format!("r_{k}(F,{t}) > {}", m * n));
    }
    for k in [3, 4] {
        for m in 1..=5 {
            for n in 1..=4 {
                let h = l_construction(m, n, k).map_err(|e| e.to_string())?;
                let alpha = max_independent_set_exact(&h, DEFAULT_BUDGET).map_err(|e| e.to_string())?.alpha;
                if h.n() <= 20 && alpha != alpha_by_masks(&h) {
                    return Err(format!("L_({m},{n}) k={k}: oracle and enumeration disagree"));
                }
                if alpha >= m + (k - 2) * n {
                    return Err(format!("L_({m},{n}) k={k}: alpha {alpha} >= m + (k-2)n"));
                }
            }
        }
    }
    let t = within(Duration::from_secs(120), start)?;
    Ok(format!("{}; grid m<=5, n<=4 holds; {t:.2?}", notes.join(", ")))
}

fn independent(h: &Hypergraph, set: &[Vertex]) -> bool {
    h.edges().iter().all(|e| !is_subset(e, set))
}

fn maximal(h: &Hypergraph, set: &[Vertex]) -> bool {
    (0..h.n() as Vertex).filter(|v| set.binary_search(v).is_err()).all(|v| {
        let mut s = set.to_vec();
        s.push(v);
        s.sort_unstable();
        !independent(h, &s)
    })
}

fn desk_instances() -> Vec<(String, Hypergraph)> {
    let mut v: Vec<(String, Hypergraph)> = Vec::new();
    let mut add = |name: String, h: omitlab::Result<Hypergraph>| v.push((name, h.expect("desk instance builds")));
    add("empty20".into(), Ok(Hypergraph::empty(20)));
    add("sunflower(3,1,4)".into(), sunflower(3, 1, 4));
    add("sunflower(4,2,5)".into(), sunflower(4, 2, 5));
    add("fan3".into(), fan(3));
    add("fan4".into(), fan(4));
    add("L(4,3,3)".into(), l_construction(4, 3, 3));
    add("L(5,4,4)".into(), l_construction(5, 4, 4));
    add("K5".into(), Hypergraph::new(5, (0..5u32).flat_map(|a| (a + 1..5).map(move |b| vec![a, b]))));
    add("lin(9,3,4)".into(), regular_linear(9, 3, 4, 0));
    add("lin(12,3,3)".into(), regular_linear(12, 3, 3, 0));
    add("lin(15,3,2)".into(), regular_linear(15, 3, 2, 0));
    add("lin(16,4,2)".into(), regular_linear(16, 4, 2, 0));
    for (i, (n, k, l)) in [(20, 3, 1), (20, 3, 2), (24, 4, 2), (24, 4, 1), (30, 5, 2), (30, 5, 3), (18, 2, 1), (25, 4, 3)]
        .into_iter()
        .enumerate()
    {
        add(format!("omit({n},{k},{l})"), random_omitting(n, k, l, 30 * n, 100 + i as u64));
    }
    v
}

fn c6_greedy() -> Outcome {
    let start = Instant::now();
    let instances = desk_instances();
    assert_eq!(instances.len(), 20);
    for (name, h) in &instances {
        for seed in 0..1000 {
            let t = greedy_independent_set(h, seed, None).map_err(|e| format!("{name} seed {seed}: {e}"))?;
            if !t.completed || !independent(h, &t.independent_set) || !maximal(h, &t.independent_set) {
                return Err(format!("{name} seed {seed}: output not a maximal independent set"));
            }
        }
    }
    let empty = Hypergraph::empty(20);
    let runs = 1000;
    let mut hits = 0;
    for seed in 0..runs {
        let t = greedy_independent_set(&empty, 50_000 + seed, Some(5)).map_err(|e| e.to_string())?;
        hits += usize::from(t.independent_set.contains(&0) && t.independent_set.contains(&1));
    }
    let p = 20.0 / 380.0;
    let freq = hits as f64 / runs as f64;
    let se = (p * (1.0 - p) / runs as f64).sqrt();
    if (freq - p).abs() > 4.0 * se {
        return Err(format!("pair frequency {freq:.4} vs {p:.4} (se {se:.4})"));
    }
    Ok(format!(
        "20 instances x 1000 runs; pair frequency {freq:.4} vs {p:.4} ({:.2} se); {:.2?}",
        (freq - p) / se,
        start.elapsed()
    ))
}

/// Test-side sunflower search: some `c`-set core with `lambda` pairwise
/// disjoint residues.
fn has_sunflower(h: &Hypergraph, c: usize, lambda: usize) -> bool {
    if lambda > h.len() {
        return false;
    }
    let mut links: HashMap<Vec<Vertex>, Vec<Vec<Vertex>>> = HashMap::new();
    for e in h.edges() {
        for_each_subset(e, c, |core| {
            let rest: Vec<Vertex> = e.iter().copied().filter(|v| core.binary_search(v).is_err()).collect();
            links.entry(core.to_vec()).or_default().push(rest);
        });
    }
    fn pack(rest: &[Vec<Vertex>], used: &mut Vec<Vertex>, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if rest.len() < need {
            return false;
        }
        let (first, tail) = rest.split_first().unwrap();
        if first.iter().all(|v| !used.contains(v)) {
            let mark = used.len();
            used.extend(first);
            if pack(tail, used, need - 1) {
                return true;
            }
            used.truncate(mark);
        }
        pack(tail, used, need)
    }
    links.values().any(|r| r.len() >= lambda && pack(r, &mut Vec::new(), lambda))
}

fn c7_decomposition() -> Outcome {
    let start = Instant::now();
    let mut grid: Vec<(String, Hypergraph, usize)> = Vec::new();
    let mut i = 0u64;
    for &(n, k, l) in &[(20, 3, 1), (30, 3, 2), (40, 3, 1), (24, 4, 2), (32, 4, 1), (40, 4, 3), (30, 5, 2), (36, 5, 3), (40, 6, 3), (40, 6, 4)] {
        for _ in 0..2 {
            let h = random_omitting(n, k, l, 30 * n, 7_000 + i).map_err(|e| e.to_string())?;
            grid.push((format!("omit({n},{k},{l})#{i}"), h, l));
            i += 1;
        }
    }
    // sunflower unions: one big flower, a second one on shifted vertices,
    // plus scattered edges
    for (j, &(k, core, petals)) in [(3, 1, 8), (3, 2, 9), (4, 1, 10), (4, 2, 9), (4, 3, 12), (5, 2, 10), (5, 3, 8), (5, 4, 16), (6, 3, 9), (6, 5, 20)]
        .iter()
        .enumerate()
    {
        let a = sunflower(k, core, petals).unwrap();
        let n = 40usize;
        let b = sunflower(k, core, (n - a.n()) / (k - core).max(1) - 1).unwrap_or_else(|_| sunflower(k, core, 1).unwrap());
        let shift = (n - b.n()) as Vertex;
        let mut edges: Vec<Vec<Vertex>> = a.edges().to_vec();
        edges.extend(b.edges().iter().map(|e| e.iter().map(|&v| v + shift).collect::<Vec<_>>()));
        let mut rng = substream(9_000 + j as u64, &[]);
        for _ in 0..5 {
            let mut e: Vec<Vertex> = sample(&mut rng, n, k).into_iter().map(|v| v as Vertex).collect();
            e.sort_unstable();
            edges.push(e);
        }
        let h = Hypergraph::with_uniformity(n, k, edges).unwrap();
        grid.push((format!("flowers(k={k},core={core},petals={petals})"), h, core));
    }
    assert_eq!(grid.len(), 30);

    let lambda = 2;
    let mut splits = 0;
    for (name, h, l) in &grid {
        let k = h.uniform_k().unwrap();
        let k0 = 2.min(k);
        let r = decompose(h, k0, lambda, DEFAULT_BUDGET).map_err(|e| format!("{name}: {e}"))?;
        if r.family.len() > 1 << (k - k0) {
            return Err(format!("{name}: family of {}", r.family.len()));
        }
        splits += r.family.len() - 1;
        for m in r.members() {
            let Some(kp) = m.uniform_k().or(if m.is_empty() { Some(k0) } else { None }) else {
                return Err(format!("{name}: non-uniform member"));
            };
            if !indecomposability_check(m, k0, k, lambda, DEFAULT_BUDGET).map_err(|e| e.to_string())?.indecomposable {
                return Err(format!("{name}: member with {} edges fails the detector", m.len()));
            }
            if kp > k0 {
                for i in 1..=kp - k0 {
                    let li = lambda_i(k, lambda, i);
                    if li <= m.len() as u64 && has_sunflower(m, kp - i, li as usize) {
                        return Err(format!("{name}: member has S_{li}({})", kp - i));
                    }
                }
            }
        }
        for e in h.edges() {
            if !r.members().any(|m| m.edges().iter().any(|f| is_subset(f, e))) {
                return Err(format!("{name}: edge {e:?} contains no member edge"));
            }
        }
        let members: Vec<Hypergraph> = r.members().cloned().collect();
        let nf = h.n() as f64;
        let lf = (*l).max(1) as f64;
        let p = (0.5 * nf.powf(-(2.0 * lf - 2.0) / (3.0 * lf - 1.0))).min(1.0);
        let d = deletion_lower_bound(&members, h.n(), p, 20, 1).map_err(|e| format!("{name}: {e}"))?;
        if !independent(h, &d.best) {
            return Err(format!("{name}: deletion output spans an input edge"));
        }
    }
    let t = within(Duration::from_secs(300), start)?;
    Ok(format!("30 instances, {splits} splits in total, {t:.2?}"))
}

fn c8_matching() -> Outcome {
    let lambda = 2;
    let mut instances: Vec<Hypergraph> = Vec::new();
    for (i, &(n, k, l)) in [(20, 3, 1), (24, 3, 2), (30, 4, 2), (30, 4, 3), (36, 5, 2), (40, 3, 1)].iter().enumerate() {
        for s in 0..3 {
            instances.push(random_omitting(n, k, l, 25 * n, 300 + 10 * i as u64 + s).unwrap());
        }
    }
    for (n, k, d) in [(9, 3, 4), (12, 3, 3), (15, 3, 2), (16, 4, 2)] {
        instances.push(regular_linear(n, k, d, 1).unwrap());
    }
    for (m, n, k) in [(4, 3, 3), (5, 3, 3), (4, 4, 4), (5, 2, 3)] {
        instances.push(l_construction(m, n, k).unwrap());
    }
    instances.push(sunflower(3, 1, 4).unwrap());
    instances.push(sunflower(4, 2, 5).unwrap());
    instances.push(fan(3).unwrap());
    instances.push(fan(4).unwrap());
    assert_eq!(instances.len(), 30);

    let mut tightest = f64::INFINITY;
    for (idx, h) in instances.iter().enumerate() {
        let k = h.uniform_k().unwrap();
        let lambdas: Vec<u64> = (1..k).map(|i| lambda_i(k, lambda, i)).collect();
        for i in 1..k {
            let li = lambdas[i - 1];
            if li <= h.len() as u64
                && contains_sunflower(h, k - i, li as usize, DEFAULT_BUDGET).map_err(|e| e.to_string())?.is_some()
            {
                return Err(format!("instance {idx} is not S_(lambda_{i})-free"));
            }
        }
        let got = greedy_matching(h).len() as f64;
        let floor = matching_floor(h.len(), &lambdas);
        if got < floor {
            return Err(format!("instance {idx}: matching {got} below floor {floor}"));
        }
        tightest = tightest.min(got / floor);
    }
    Ok(format!("30 instances, smallest matching/floor ratio {tightest:.1}"))
}

fn linear_and_regular(h: &Hypergraph, k: usize, d: usize) -> bool {
    let mut deg = vec![0; h.n()];
    for e in h.edges() {
        if e.len() != k {
            return false;
        }
        e.iter().for_each(|&v| deg[v as usize] += 1);
    }
    let mut pairs = HashSet::new();
    deg.iter().all(|&x| x == d)
        && h.edges().iter().all(|e| {
            let mut fresh = true;
            for_each_subset(e, 2, |p| fresh &= pairs.insert(p.to_vec()));
            fresh
        })
}

fn c9_regular_linear() -> Outcome {
    let mut notes = Vec::new();
    let cases: Vec<(usize, usize, usize)> = (1..=4).map(|d| (9, 3, d)).chain([(16, 4, 2), (12, 3, 3)]).collect();
    for (n, k, d) in cases {
        let mut found = None;
        for seed in 0..5 {
            let start = Instant::now();
            if let Ok(h) = regular_linear(n, k, d, seed) {
                let t = start.elapsed();
                if linear_and_regular(&h, k, d) && t < Duration::from_secs(10) {
                    found = Some((seed, t));
                    break;
                }
            }
        }
        match found {
            Some((seed, t)) => notes.push(format!("({n},{k},{d}) seed {seed} {t:.1?}")),
            None => return Err(format!("({n},{k},{d}): no seed in 0..5 succeeded")),
        }
    }
    Ok(notes.join(", "))
}

fn random_hypergraph(rng: &mut impl Rng, n: usize, k: usize, m: usize) -> Hypergraph {
    let edges: Vec<Vec<Vertex>> = (0..m)
        .map(|_| {
            let mut e: Vec<Vertex> = sample(rng, n, k).into_iter().map(|v| v as Vertex).collect();
            e.sort_unstable();
            e
        })
        .collect();
    Hypergraph::with_uniformity(n, k, edges).unwrap()
}

fn c10_cross_validation() -> Outcome {
    let mut rng = substream(10, &[]);
    for i in 0..200 {
        let n = rng.gen_range(4..=18);
        let k = rng.gen_range(2..=4.min(n));
        let m = rng.gen_range(0..=3 * n);
        let h = random_hypergraph(&mut rng, n, k, m);
        let exact = max_independent_set_exact(&h, DEFAULT_BUDGET).map_err(|e| e.to_string())?.alpha;
        let brute = alpha_by_masks(&h);
        if exact != brute {
            return Err(format!("instance {i}: branch and bound {exact}, enumeration {brute}"));
        }
    }
    let mut hits = 0;
    for i in 0..1000 {
        let n = rng.gen_range(5..=12);
        let k = rng.gen_range(2..=5.min(n - 1));
        let l = rng.gen_range(1..k);
        let m = rng.gen_range(1..=12);
        let h = random_hypergraph(&mut rng, n, k, m);
        let a = omitting_check(&h, l).is_some();
        let b = contains_sunflower(&h, l, 2, DEFAULT_BUDGET).map_err(|e| e.to_string())?.is_some();
        if a != b {
            return Err(format!("instance {i}: omitting_check {a}, sunflower {b}"));
        }
        hits += usize::from(a);
    }
    Ok(format!("200 alpha agreements, 1000 omitting agreements ({hits} with a pair)"))
}

const TREND_CONFIGS: [&str; 5] = [
    "kind = \"greedy-scaling\"\nseeds = [1, 2, 3]\ntrials = 10\n[grid]\nn = [9, 15, 21, 27]\nk = [3]\nd = [2, 3, 4]\n",
    "kind = \"omitting-alpha\"\nseeds = [1, 2]\ntrials = 10\n[grid]\nn = [16, 24, 32]\nk = [5]\nl = [2]\n",
    "kind = \"decompose-deletion\"\nseeds = [1, 2]\ntrials = 20\n[grid]\nn = [20, 30, 40]\nk = [4]\nl = [2]\nk0 = [2]\nlambda = [2]\n",
    "kind = \"spectrum-sweep\"\n[grid]\nq = [3, 5, 7]\nl = [2]\n",
    "kind = \"mixing-sweep\"\ntrials = 200\n[grid]\nq = [3, 5, 7]\nl = [2]\n",
];

fn c11_trend_tables() -> Outcome {
    let mut names = HashSet::new();
    let mut rows = 0;
    for text in TREND_CONFIGS {
        let cfg = ExperimentConfig::from_toml(text).map_err(|e| e.to_string())?;
        let a = run_experiment(&cfg, 11, 1).map_err(|e| format!("{}: {e}", cfg.kind.name()))?;
        let b = run_experiment(&cfg, 11, 4).map_err(|e| format!("{}: {e}", cfg.kind.name()))?;
        let (ca, cb) = (a.table.to_csv().unwrap(), b.table.to_csv().unwrap());
        if ca != cb {
            return Err(format!("{}: table differs between job counts", cfg.kind.name()));
        }
        if a.table.rows.is_empty() || !a.table.ratios_finite_positive() {
            return Err(format!("{}: empty table or bad ratio", cfg.kind.name()));
        }
        rows += a.table.rows.len();
        names.extend(a.table.rows.iter().map(|r| r.benchmark_name.clone()));
    }
    for want in ["spencer", "omitting-upper", "greedy-process"] {
        if !names.contains(want) {
            return Err(format!("no {want} column"));
        }
    }
    Ok(format!("5 kinds, {rows} rows, deterministic across job counts"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("spectrum certificate", c1_spectrum),
        ("regularity and Zarankiewicz", c2_regularity),
        ("mixing", c3_mixing),
        ("omitting certificate", c4_omitting),
        ("Ramsey certificate", c5_ramsey),
        ("greedy validity and uniformity", c6_greedy),
        ("decomposition invariants", c7_decomposition),
        ("matching floor", c8_matching),
        ("regular linear builder", c9_regular_linear),
        ("oracle cross-validation", c10_cross_validation),
        ("trend tables", c11_trend_tables),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
