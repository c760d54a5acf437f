//! Run records, bound tables and the experiment grid runner.
//!
//! Seeding: cell `c` of an experiment of kind `K` under master seed `s`
//! uses `substream_seed(s, [tag(K), c])`; instance `j` and trial `t` inside
//! it add `[j, t]`. Cells never share random state, so the table does not
//! depend on scheduling or on which other cells are present.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::seq::index::sample;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constructions::{l_construction, omitting_system, random_omitting, regular_linear};
use crate::error::{invalid, Error, Result};
use crate::field::{build_polynomial_graph, BipartiteGraph};
use crate::hypergraph::Hypergraph;
use crate::oracles::{contains_fan, max_independent_set_exact, omitting_check, DEFAULT_MIS_VERTICES};
use crate::processes::{decompose, deletion_lower_bound, greedy_independent_set};
use crate::seed::{substream, substream_seed, tag};
use crate::spectral::{mixing_discrepancy, spectrum};

pub const VERSION: &str = concat!("omitlab ", env!("CARGO_PKG_VERSION"));

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub seed: u64,
    /// Artifact name to sha256 of its bytes.
    pub artifacts: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub wall_time_secs: f64,
    pub version: String,
}

impl RunRecord {
    pub fn new(command: &str, seed: u64) -> Self {
        RunRecord {
            command: command.into(),
            params: BTreeMap::new(),
            seed,
            artifacts: BTreeMap::new(),
            checks: Vec::new(),
            wall_time_secs: 0.0,
            version: VERSION.into(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.params.insert(key.into(), serde_json::to_value(value).unwrap_or(serde_json::Value::Null));
        self
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) -> &mut Self {
        self.checks.push(Check { name: name.into(), passed });
        self
    }

    pub fn artifact(&mut self, name: &str, bytes: &[u8]) -> &mut Self {
        self.artifacts.insert(name.into(), sha256_hex(bytes));
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: usize,
    pub params: String,
    pub measured: f64,
    pub benchmark_name: String,
    pub benchmark: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundTable {
    pub rows: Vec<BoundRow>,
}

impl BoundTable {
    pub fn push(&mut self, n: usize, params: String, measured: f64, benchmark_name: &str, benchmark: f64) {
        self.rows.push(BoundRow {
            n,
            params,
            measured,
            benchmark_name: benchmark_name.into(),
            benchmark,
            ratio: measured / benchmark,
        });
    }

    pub fn ratios_finite_positive(&self) -> bool {
        self.rows.iter().all(|r| r.ratio.is_finite() && r.ratio > 0.0)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "params", "measured", "benchmark_name", "benchmark", "ratio"])?;
        for r in &self.rows {
            w.serialize((r.n, &r.params, r.measured, &r.benchmark_name, r.benchmark, r.ratio))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}

/// Exclusive ownership of an output directory via a `run.lock` file,
/// removed on drop.
pub struct RunDir {
    path: PathBuf,
    lock: PathBuf,
}

impl RunDir {
    pub fn acquire(path: &Path) -> Result<Self> {
        fs::create_dir_all(path)?;
        let lock = path.join("run.lock");
        match OpenOptions::new().write(true).create_new(true).open(&lock) {
            Ok(_) => Ok(RunDir { path: path.to_path_buf(), lock }),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                invalid(format!("{} is locked by another run", path.display()))
            }
            Err(e) => Err(e.into()),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Writes every file to a temporary name first, then renames them all,
    /// so a failure leaves no partial artifacts.
    pub fn write_all(&self, files: &[(&str, &[u8])]) -> Result<()> {
        let mut staged = Vec::new();
        for (name, bytes) in files {
            let tmp = self.path.join(format!(".{name}.tmp"));
            if let Err(e) = fs::write(&tmp, bytes) {
                staged.iter().for_each(|(t, _)| drop(fs::remove_file(t)));
                return Err(e.into());
            }
            staged.push((tmp, self.path.join(name)));
        }
        for (tmp, dst) in staged {
            fs::rename(tmp, dst)?;
        }
        Ok(())
    }
}

impl Drop for RunDir {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.lock);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    GreedyScaling,
    OmittingAlpha,
    DecomposeDeletion,
    SpectrumSweep,
    MixingSweep,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::GreedyScaling => "greedy-scaling",
            ExperimentKind::OmittingAlpha => "omitting-alpha",
            ExperimentKind::DecomposeDeletion => "decompose-deletion",
            ExperimentKind::SpectrumSweep => "spectrum-sweep",
            ExperimentKind::MixingSweep => "mixing-sweep",
        }
    }

    fn keys(self, grid: &Grid) -> &'static [&'static str] {
        match self {
            ExperimentKind::GreedyScaling => &["n", "k", "d"],
            ExperimentKind::OmittingAlpha if grid.q.is_some() => &["q", "l", "k"],
            ExperimentKind::OmittingAlpha => &["n", "k", "l"],
            ExperimentKind::DecomposeDeletion => &["n", "k", "l", "k0", "lambda"],
            ExperimentKind::SpectrumSweep | ExperimentKind::MixingSweep => &["q", "l"],
        }
    }
}

/// Parameter lists; a missing list is empty, so the grid has no cells.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub n: Option<Vec<u64>>,
    pub k: Option<Vec<u64>>,
    pub d: Option<Vec<u64>>,
    pub l: Option<Vec<u64>>,
    pub q: Option<Vec<u64>>,
    pub k0: Option<Vec<u64>>,
    pub lambda: Option<Vec<u64>>,
}

impl Grid {
    fn list(&self, key: &str) -> &[u64] {
        let v = match key {
            "n" => &self.n,
            "k" => &self.k,
            "d" => &self.d,
            "l" => &self.l,
            "q" => &self.q,
            "k0" => &self.k0,
            "lambda" => &self.lambda,
            _ => unreachable!("unknown grid key {key}"),
        };
        v.as_deref().unwrap_or(&[])
    }
}

fn default_trials() -> usize {
    5
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

fn default_delta() -> f64 {
    0.5
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// Instance seeds per cell.
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    /// Greedy runs, deletion trials or mixing pairs per instance.
    #[serde(default = "default_trials")]
    pub trials: usize,
    pub budget: Option<u64>,
    /// Candidate `k`-sets drawn per random omitting instance; defaults to `20 n`.
    pub attempts: Option<usize>,
    /// Deletion probability scale.
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub grid: Grid,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(0, |s| text[..s.start].matches('\n').count() + 1);
            Error::Parse { line, message: e.message().to_string() }
        })
    }

    pub fn cells(&self) -> Vec<BTreeMap<&'static str, u64>> {
        let mut cells = vec![BTreeMap::new()];
        for &key in self.kind.keys(&self.grid) {
            let values = self.grid.list(key);
            cells = cells
                .into_iter()
                .flat_map(|c| {
                    values.iter().map(move |&v| {
                        let mut c = c.clone();
                        c.insert(key, v);
                        c
                    })
                })
                .collect();
        }
        cells
    }
}

pub struct ExperimentOutput {
    pub table: BoundTable,
    pub record: RunRecord,
}

struct CellOutcome {
    rows: Vec<(usize, String, f64, &'static str, f64)>,
    checks: Vec<Check>,
}

fn describe(cell: &BTreeMap<&'static str, u64>) -> String {
    cell.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

/// Runs every cell (in parallel on `jobs` threads), verifying each instance.
/// A failing instance aborts with `Error::Verification` carrying the record.
pub fn run_experiment(config: &ExperimentConfig, master: u64, jobs: usize) -> Result<ExperimentOutput> {
    let start = Instant::now();
    let cells = config.cells();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    let outcomes: Vec<Result<CellOutcome>> = pool.install(|| {
        cells
            .par_iter()
            .enumerate()
            .map(|(i, cell)| {
                let seed = substream_seed(master, &[tag(config.kind.name()), i as u64]);
                run_cell(config, cell, seed)
            })
            .collect()
    });

    let mut record = RunRecord::new("experiment", master);
    record.param("config", config);
    let mut table = BoundTable::default();
    let mut failure = None;
    for (cell, outcome) in cells.iter().zip(outcomes) {
        let label = describe(cell);
        match outcome {
            Ok(o) => {
                for c in o.checks {
                    record.check(format!("{label}:{}", c.name), c.passed);
                }
                for (n, params, measured, name, bench) in o.rows {
                    table.push(n, params, measured, name, bench);
                }
            }
            Err(e) => {
                record.check(format!("{label}:run"), false);
                failure.get_or_insert(format!("{label}: {e}"));
            }
        }
    }
    record.check("ratios-finite-positive", table.ratios_finite_positive());
    let csv = table.to_csv()?;
    // Jacobi output is only reproducible within tolerance across platforms
    if config.kind != ExperimentKind::SpectrumSweep {
        record.artifact("table.csv", csv.as_bytes());
    }
    record.wall_time_secs = start.elapsed().as_secs_f64();
    if let Some(msg) = failure {
        return Err(Error::Verification(format!("{msg}\n{}", record.to_json())));
    }
    if !record.all_passed() {
        return Err(Error::Verification(record.to_json()));
    }
    Ok(ExperimentOutput { table, record })
}

fn run_cell(config: &ExperimentConfig, cell: &BTreeMap<&'static str, u64>, seed: u64) -> Result<CellOutcome> {
    let get = |k: &str| cell[k] as usize;
    let label = describe(cell);
    let budget = config.budget.unwrap_or(crate::oracles::DEFAULT_BUDGET);
    let mut out = CellOutcome { rows: Vec::new(), checks: Vec::new() };
    let mut check = |name: String, passed: bool| out.checks.push(Check { name, passed });
    let mut rows = Vec::new();

    match config.kind {
        ExperimentKind::GreedyScaling => {
            let (n, k, d) = (get("n"), get("k"), get("d"));
            for (j, &s) in config.seeds.iter().enumerate() {
                let h = regular_linear(n, k, d, substream_seed(seed, &[s]))?;
                let mut sizes = Vec::new();
                for t in 0..config.trials.max(1) {
                    let tr = greedy_independent_set(&h, substream_seed(seed, &[s, t as u64]), None)?;
                    sizes.push(tr.independent_set.len() as f64);
                }
                check(format!("seed{j}:maximal-independent"), true);
                let mean = sizes.iter().sum::<f64>() / sizes.len() as f64;
                let (nf, df, e) = (n as f64, d as f64, 1.0 / (k as f64 - 1.0));
                let params = format!("{label};seed={s}");
                rows.push((n, params.clone(), mean, "spencer", nf / df.powf(e)));
                if nf.ln() > 0.0 {
                    rows.push((n, params, mean, "greedy-process", nf * (nf.ln() / df).powf(e)));
                }
            }
        }
        ExperimentKind::OmittingAlpha => {
            for (j, &s) in config.seeds.iter().enumerate() {
                let (h, l, params) = if config.grid.q.is_some() {
                    let b = omitting_system(cell["q"], get("l"), get("k"), substream_seed(seed, &[s]))?;
                    check(format!("seed{j}:omitting-verified"), b.omitting_verified);
                    (b.hypergraph, get("l"), format!("{label};seed={s}"))
                } else {
                    let (n, k, l) = (get("n"), get("k"), get("l"));
                    let attempts = config.attempts.unwrap_or(20 * n);
                    let h = random_omitting(n, k, l, attempts, substream_seed(seed, &[s]))?;
                    (h, l, format!("{label};seed={s}"))
                };
                check(format!("seed{j}:omitting-check"), omitting_check(&h, l).is_none());
                let (alpha, how) = alpha_estimate(&h, budget, config.trials, substream_seed(seed, &[s, 1]))?;
                check(format!("seed{j}:alpha-independent"), true);
                let n = h.n();
                let nf = n as f64;
                let lf = l as f64;
                let upper = nf.powf((lf + 1.0) / (2.0 * lf)) * nf.ln().powf(1.0 / lf);
                let params = format!("{params};alpha={how}");
                rows.push((n, params.clone(), alpha as f64, "omitting-upper", upper));
                let k = h.uniform_k().unwrap_or(2);
                let d = k as f64 * h.len() as f64 / nf;
                if d > 0.0 {
                    rows.push((n, params, alpha as f64, "spencer", nf / d.powf(1.0 / (k as f64 - 1.0))));
                }
            }
        }
        ExperimentKind::DecomposeDeletion => {
            let (n, k, l, k0, lambda) = (get("n"), get("k"), get("l"), get("k0"), get("lambda"));
            for (j, &s) in config.seeds.iter().enumerate() {
                let attempts = config.attempts.unwrap_or(20 * n);
                let h = random_omitting(n, k, l, attempts, substream_seed(seed, &[s]))?;
                let r = decompose(&h, k0, lambda, budget)?;
                let members: Vec<Hypergraph> = r.members().cloned().collect();
                let nf = n as f64;
                let lf = l as f64;
                let p = (config.delta * nf.powf(-(2.0 * lf - 2.0) / (3.0 * lf - 1.0))).min(1.0);
                let del = deletion_lower_bound(&members, n, p, config.trials, substream_seed(seed, &[s, 1]))?;
                check(format!("seed{j}:family-size"), r.family.len() <= 1 << (k - k0));
                check(format!("seed{j}:independent-in-h"), h.is_independent(&del.best));
                let lower = nf.powf((lf + 1.0) / (3.0 * lf - 1.0));
                rows.push((n, format!("{label};seed={s};p={p:.6}"), del.best.len() as f64, "omitting-lower", lower));
            }
        }
        ExperimentKind::SpectrumSweep => {
            let (q, l) = (cell["q"], get("l"));
            let g = build_polynomial_graph(q, l)?;
            let rep = spectrum::<f64>(&g, 1e-8)?;
            let qf = q as f64;
            let top = qf.powf(l as f64 / 2.0);
            let second = qf.powf((l as f64 - 1.0) / 2.0);
            let middle = (q * q - q) as usize;
            let zeros = g.left_size() + g.right_size() - 2 - 2 * middle;
            let ok = rep.multiplicity_near(top, 1e-8) == 1
                && rep.multiplicity_near(-top, 1e-8) == 1
                && rep.multiplicity_near(second, 1e-8) == middle
                && rep.multiplicity_near(-second, 1e-8) == middle
                && rep.multiplicity_near(0.0, 1e-8) == zeros;
            check("spectrum-matches".into(), ok);
            let d1 = g.left_regular().unwrap_or(0) as f64;
            rows.push((g.left_size() + g.right_size(), label, rep.lambda2, "sqrt-d1", d1.sqrt()));
        }
        ExperimentKind::MixingSweep => {
            let (q, l) = (cell["q"], get("l"));
            let g = build_polynomial_graph(q, l)?;
            let lambda = spectrum::<f64>(&g, 1e-8)?.lambda2;
            let mix = mixing_trials(&g, lambda, config.trials, seed)?;
            check("zero-violations".into(), mix.violations == 0);
            // all-zero discrepancy would give a zero ratio; floor keeps it positive
            let n = g.left_size() + g.right_size();
            rows.push((n, label, mix.worst_ratio.max(f64::MIN_POSITIVE), "lambda2", lambda));
        }
    }
    out.rows = rows;
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MixingSummary {
    pub pairs: usize,
    pub lambda: f64,
    pub violations: usize,
    /// Largest `|e(X, Y) - d1 |X||Y| / n| / sqrt(|X||Y|)` seen.
    pub worst_ratio: f64,
}

/// Tests `pairs` random `(X, Y)`: sizes uniform in `1..=side`, then uniform
/// subsets of those sizes, all drawn from substream 0 of `seed`.
pub fn mixing_trials(g: &BipartiteGraph, lambda: f64, pairs: usize, seed: u64) -> Result<MixingSummary> {
    use rand::Rng;
    let mut rng = substream(seed, &[0]);
    let (m, r) = (g.left_size(), g.right_size());
    let mut out = MixingSummary { pairs, lambda, violations: 0, worst_ratio: 0.0 };
    if m == 0 || r == 0 {
        return Ok(out);
    }
    for _ in 0..pairs {
        let a = rng.gen_range(1..=m);
        let b = rng.gen_range(1..=r);
        let xs: Vec<u32> = sample(&mut rng, m, a).into_iter().map(|v| v as u32).collect();
        let ys: Vec<u32> = sample(&mut rng, r, b).into_iter().map(|v| v as u32).collect();
        let rep = mixing_discrepancy(g, &xs, &ys, lambda)?;
        out.violations += usize::from(!rep.pass);
        out.worst_ratio = out.worst_ratio.max(rep.discrepancy / ((a * b) as f64).sqrt());
    }
    Ok(out)
}

/// Exact α when the oracle can afford it, else the best of `trials` greedy runs.
fn alpha_estimate(h: &Hypergraph, budget: u64, trials: usize, seed: u64) -> Result<(usize, &'static str)> {
    if h.n() <= DEFAULT_MIS_VERTICES {
        match max_independent_set_exact(h, budget) {
            Ok(r) => return Ok((r.alpha, "exact")),
            Err(Error::OracleTimeout { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let mut best = 0;
    for t in 0..trials.max(1) {
        best = best.max(greedy_independent_set(h, substream_seed(seed, &[t as u64]), None)?.independent_set.len());
    }
    Ok((best, "greedy"))
}

#[derive(Clone, Debug, Serialize)]
pub struct RamseyCertificate {
    pub alpha: usize,
    pub fan_free: bool,
    pub independent_set: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamseyFanReport {
    pub t: usize,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    /// `r_k(F^k, t) > lower_exclusive`.
    pub lower_exclusive: usize,
    pub upper: usize,
    pub certificate: Option<RamseyCertificate>,
    /// Set when a certificate was requested but not produced.
    pub refusal: Option<String>,
}

impl RamseyFanReport {
    pub fn certified(&self) -> bool {
        self.certificate.as_ref().is_some_and(|c| c.fan_free && c.alpha < self.t)
    }
}

/// Builds `L_{m,n}` with `m = ⌊t/2⌋`, `n = ⌊(t-1)/(2(k-2))⌋` and reports
/// `mn < r_k(F^k, t) <= t(t-1)+1`; with `verify`, checks `α < t` and
/// fan-freeness exactly.
pub fn ramsey_fan(t: usize, k: usize, verify: bool, budget: u64) -> Result<RamseyFanReport> {
    if k < 3 || t < k {
        return invalid(format!("ramsey-fan needs t >= k >= 3 (t={t}, k={k})"));
    }
    let m = t / 2;
    let n = (t - 1) / (2 * (k - 2));
    let h = l_construction(m, n, k)?;
    let mut report = RamseyFanReport {
        t,
        k,
        m,
        n,
        vertices: h.n(),
        edges: h.len(),
        lower_exclusive: m * n,
        upper: t * (t - 1) + 1,
        certificate: None,
        refusal: None,
    };
    if !verify {
        return Ok(report);
    }
    if h.n() > DEFAULT_MIS_VERTICES {
        report.refusal = Some(format!("{} vertices exceed the exact oracle limit of {DEFAULT_MIS_VERTICES}", h.n()));
        return Ok(report);
    }
    let outcome = max_independent_set_exact(&h, budget).and_then(|mis| Ok((mis, contains_fan(&h, budget)?)));
    match outcome {
        Ok((mis, fan)) => {
            report.certificate = Some(RamseyCertificate {
                alpha: mis.alpha,
                fan_free: fan.is_none(),
                independent_set: mis.witness.vertices[0].clone(),
            });
        }
        Err(Error::OracleTimeout { budget }) => {
            report.refusal = Some(format!("oracle budget of {budget} node expansions exhausted"));
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}
