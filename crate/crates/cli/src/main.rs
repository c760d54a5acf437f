use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use omitlab::constructions::{
    fan, incidence_hypergraph, l_construction, omitting_system_with, preflight_q, regular_linear, sunflower,
    OmittingParams, TraceWindowPolicy,
};
use omitlab::field::{from_bipartite_text, k2l_free_check, to_bipartite_text};
use omitlab::harness::{mixing_trials, ramsey_fan, run_experiment, ExperimentConfig, RunDir, RunRecord};
use omitlab::hypergraph::io::{from_edge_list, to_edge_list};
use omitlab::oracles::{
    contains_fan, contains_sunflower, max_independent_set_exact, omitting_check, DEFAULT_BUDGET,
};
use omitlab::processes::{decompose, deletion_lower_bound, greedy_independent_set};
use omitlab::spectral::spectrum;
use omitlab::{build_polynomial_graph, BipartiteGraph, Error, Hypergraph, Result};

#[derive(Parser)]
#[command(name = "omitlab", version, about = "Omitting systems, independent sets and their certificates")]
struct Cli {
    /// Master seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node-expansion budget for exact oracles.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for experiment grids.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output directory; OMITLAB_OUT is used when the flag is absent.
    #[arg(long, global = true, env = "OMITLAB_OUT", default_value = ".")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a hypergraph or bipartite graph and write it with a provenance record.
    Construct {
        #[command(subcommand)]
        what: Construction,
        /// File stem; defaults to the construction name.
        #[arg(long, global = true)]
        name: Option<String>,
    },
    /// Degree profile, cycle census and pattern searches for an edge list.
    Analyze(AnalyzeArgs),
    /// Random greedy independent set; writes the trace CSV.
    Greedy {
        input: PathBuf,
        #[arg(long)]
        stop_at: Option<usize>,
    },
    /// Exact independence number.
    Alpha { input: PathBuf },
    /// Sunflower decomposition followed by probabilistic deletion.
    Decompose {
        input: PathBuf,
        #[arg(long)]
        k0: usize,
        #[arg(long)]
        lambda: usize,
        /// Deletion probability; omitted skips the deletion step.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Fan Ramsey bounds from the L-construction.
    RamseyFan {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        /// Certify the lower bound with the exact oracles.
        #[arg(long)]
        verify: bool,
    },
    /// Adjacency spectrum of a bipartite graph; writes the spectrum CSV.
    Spectrum(GraphSource),
    /// Random mixing checks against the measured second eigenvalue.
    Mixing {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
    },
    /// Run a TOML experiment grid; writes table.csv and record.json.
    Experiment { config: PathBuf },
}

#[derive(Subcommand)]
enum Construction {
    Sunflower {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        lambda: usize,
    },
    Fan {
        #[arg(long)]
        k: usize,
    },
    L {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    LinearRegular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
    Polygraph {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        l: usize,
    },
    Incidence {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        l: usize,
    },
    Omitting {
        /// Prime modulus; defaults to the smallest feasible one.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Policy::Prune)]
        policy: Policy,
        #[arg(long, default_value_t = 100)]
        max_retries: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Prune,
    Resample,
}

#[derive(Args)]
struct AnalyzeArgs {
    input: PathBuf,
    /// Omitting check at intersection size `l` (repeatable).
    #[arg(long)]
    omitting: Vec<usize>,
    /// Sunflower search `l,lambda` (repeatable).
    #[arg(long, value_parser = parse_pair)]
    sunflower: Vec<(usize, usize)>,
    /// Search for the k-fan.
    #[arg(long)]
    fan: bool,
}

#[derive(Args)]
struct GraphSource {
    #[arg(long, requires = "l", conflicts_with = "input")]
    q: Option<u64>,
    #[arg(long)]
    l: Option<usize>,
    /// Bipartite text file instead of the polynomial graph.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Eigensolver tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `l,lambda`")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification(_) => 2,
        Error::OracleTimeout { .. } => 3,
        Error::Parse { .. } => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("omitlab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn print(v: &Value) {
    use std::io::Write;
    // a closed pipe downstream is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("json"));
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    from_edge_list(&std::fs::read_to_string(path)?)
}

fn run(cli: &Cli) -> Result<u8> {
    let start = Instant::now();
    match &cli.command {
        Command::Construct { what, name } => construct(cli, what, name.as_deref(), start),
        Command::Analyze(args) => analyze(cli, args),
        Command::Greedy { input, stop_at } => {
            let h = read_hypergraph(input)?;
            let trace = greedy_independent_set(&h, cli.seed, *stop_at)?;
            let csv = trace.to_csv();
            let dir = RunDir::acquire(&cli.out_dir)?;
            dir.write_all(&[("greedy_trace.csv", csv.as_bytes())])?;
            print(&json!({
                "n": h.n(),
                "edges": h.len(),
                "i_max": trace.i_max,
                "completed": trace.completed,
                "independent_set": trace.independent_set,
                "trace": dir.path().join("greedy_trace.csv"),
            }));
            Ok(0)
        }
        Command::Alpha { input } => {
            let h = read_hypergraph(input)?;
            let r = max_independent_set_exact(&h, cli.budget)?;
            print(&json!({ "n": h.n(), "alpha": r.alpha, "nodes": r.nodes, "witness": r.witness }));
            Ok(0)
        }
        Command::Decompose { input, k0, lambda, p, trials } => {
            let h = read_hypergraph(input)?;
            let r = decompose(&h, *k0, *lambda, cli.budget)?;
            let mut out = json!({ "decomposition": r });
            if let Some(p) = p {
                let members: Vec<Hypergraph> = r.members().cloned().collect();
                let d = deletion_lower_bound(&members, h.n(), *p, *trials, cli.seed)?;
                if !h.is_independent(&d.best) {
                    return Err(Error::Verification("deletion output spans an input edge".into()));
                }
                out["deletion"] = serde_json::to_value(&d)?;
            }
            print(&out);
            Ok(0)
        }
        Command::RamseyFan { t, k, verify } => {
            let r = ramsey_fan(*t, *k, *verify, cli.budget)?;
            print(&serde_json::to_value(&r)?);
            if let Some(why) = &r.refusal {
                eprintln!("omitlab: certificate refused: {why}");
                return Ok(3);
            }
            if *verify && !r.certified() {
                eprintln!("omitlab: lower bound not certified");
                return Ok(2);
            }
            Ok(0)
        }
        Command::Spectrum(src) => {
            let g = load_graph(src)?;
            let rep = spectrum::<f64>(&g, src.tol)?;
            let csv = rep.to_csv(src.tol.sqrt());
            let dir = RunDir::acquire(&cli.out_dir)?;
            dir.write_all(&[("spectrum.csv", csv.as_bytes())])?;
            print(&json!({
                "left": g.left_size(),
                "right": g.right_size(),
                "largest": rep.largest(),
                "lambda2": rep.lambda2,
                "rank": rep.rank,
                "sweeps": rep.sweeps,
                "residual": rep.residual,
                "spectrum": dir.path().join("spectrum.csv"),
            }));
            Ok(0)
        }
        Command::Mixing { source, pairs } => {
            let g = load_graph(source)?;
            let lambda = spectrum::<f64>(&g, source.tol)?.lambda2;
            let s = mixing_trials(&g, lambda, *pairs, cli.seed)?;
            print(&serde_json::to_value(&s)?);
            Ok(if s.violations == 0 { 0 } else { 2 })
        }
        Command::Experiment { config } => {
            let cfg = ExperimentConfig::from_toml(&std::fs::read_to_string(config)?)?;
            let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let dir = RunDir::acquire(&cli.out_dir)?;
            let out = run_experiment(&cfg, cli.seed, jobs)?;
            let csv = out.table.to_csv()?;
            let record = out.record.to_json();
            dir.write_all(&[("table.csv", csv.as_bytes()), ("record.json", record.as_bytes())])?;
            print(&json!({
                "kind": cfg.kind.name(),
                "rows": out.table.rows.len(),
                "table": dir.path().join("table.csv"),
                "record": dir.path().join("record.json"),
            }));
            Ok(0)
        }
    }
}

fn load_graph(src: &GraphSource) -> Result<BipartiteGraph> {
    match (&src.input, src.q, src.l) {
        (Some(path), _, _) => from_bipartite_text(&std::fs::read_to_string(path)?),
        (None, Some(q), Some(l)) => build_polynomial_graph(q, l),
        _ => Err(Error::InvalidInput("give either --input or both --q and --l".into())),
    }
}

fn construct(cli: &Cli, what: &Construction, name: Option<&str>, start: Instant) -> Result<u8> {
    let mut record = RunRecord::new("construct", cli.seed);
    let (stem, text, extension, summary) = match *what {
        Construction::Sunflower { k, l, lambda } => {
            record.param("construction", "sunflower").param("k", k).param("l", l).param("lambda", lambda);
            let h = sunflower(k, l, lambda)?;
            record.check("edge-count", h.len() == lambda);
            record.check("sunflower-found", contains_sunflower(&h, l, lambda, cli.budget)?.is_some());
            ("sunflower", to_edge_list(&h), "edges", hyper_summary(&h))
        }
        Construction::Fan { k } => {
            record.param("construction", "fan").param("k", k);
            let h = fan(k)?;
            record.check("shape", h.len() == k + 1 && h.n() == k * (k - 1) + 1);
            record.check("fan-found", contains_fan(&h, cli.budget)?.is_some());
            ("fan", to_edge_list(&h), "edges", hyper_summary(&h))
        }
        Construction::L { m, n, k } => {
            record.param("construction", "l").param("m", m).param("n", n).param("k", k);
            let h = l_construction(m, n, k)?;
            let want = omitlab::hypergraph::subsets::binomial(m as u64, k as u64 - 1)
                * omitlab::hypergraph::subsets::binomial(n as u64, 2);
            record.check("edge-count", h.len() as u64 == want);
            ("l", to_edge_list(&h), "edges", hyper_summary(&h))
        }
        Construction::LinearRegular { n, k, d } => {
            record.param("construction", "linear-regular").param("n", n).param("k", k).param("d", d);
            let h = regular_linear(n, k, d, cli.seed)?;
            record.check("linear", h.cycle_census()?.is_linear());
            record.check("regular", h.vertex_degrees().iter().all(|&x| x == d));
            ("linear-regular", to_edge_list(&h), "edges", hyper_summary(&h))
        }
        Construction::Polygraph { q, l } => {
            record.param("construction", "polygraph").param("q", q).param("l", l);
            let g = build_polynomial_graph(q, l)?;
            let d2 = (q as usize).pow(l as u32 - 1);
            record.check("biregular", g.biregular() == Some((q as usize, d2)));
            record.check("k2l-free", k2l_free_check(&g, l).is_none());
            let summary = json!({ "left": g.left_size(), "right": g.right_size(), "edges": g.edge_count() });
            ("polygraph", to_bipartite_text(&g), "bip", summary)
        }
        Construction::Incidence { q, l } => {
            record.param("construction", "incidence").param("q", q).param("l", l);
            let h = incidence_hypergraph(&build_polynomial_graph(q, l)?)?;
            record.check("uniform", h.uniform_k() == Some(q as usize));
            ("incidence", to_edge_list(&h), "edges", hyper_summary(&h))
        }
        Construction::Omitting { q, l, k, policy, max_retries } => {
            let q = match q {
                Some(q) => q,
                None => preflight_q(l, k)?,
            };
            let mut params = OmittingParams::new(q, l, k, cli.seed);
            params.policy = match policy {
                Policy::Prune => TraceWindowPolicy::Prune,
                Policy::Resample => TraceWindowPolicy::Resample,
            };
            params.max_retries = max_retries;
            let b = omitting_system_with(params)?;
            record.param("construction", "omitting").param("build", &b);
            record.check("omitting-verified", b.omitting_verified);
            record.check("omitting-recheck", omitting_check(&b.hypergraph, l).is_none());
            ("omitting", to_edge_list(&b.hypergraph), "edges", hyper_summary(&b.hypergraph))
        }
    };
    if !record.all_passed() {
        return Err(Error::Verification(record.to_json()));
    }
    let stem = name.unwrap_or(stem);
    let file = format!("{stem}.{extension}");
    record.artifact(&file, text.as_bytes());
    record.wall_time_secs = start.elapsed().as_secs_f64();
    let sidecar = record.to_json();
    let dir = RunDir::acquire(&cli.out_dir)?;
    dir.write_all(&[(file.as_str(), text.as_bytes()), (&format!("{stem}.json"), sidecar.as_bytes())])?;
    let mut out = summary;
    out["file"] = json!(dir.path().join(&file));
    out["sha256"] = json!(record.artifacts[&file]);
    print(&out);
    Ok(0)
}

fn hyper_summary(h: &Hypergraph) -> Value {
    json!({ "n": h.n(), "edges": h.len(), "k": h.uniform_k() })
}

fn analyze(cli: &Cli, args: &AnalyzeArgs) -> Result<u8> {
    let h = read_hypergraph(&args.input)?;
    let mut report = json!({ "n": h.n(), "edges": h.len(), "k": h.uniform_k() });
    if h.uniform_k().is_some() {
        let deg = h.degree_profile()?;
        let census = h.cycle_census()?;
        report["max_degree"] = json!(deg.max_degree);
        report["max_i_degree"] = json!(deg.max_i_degree);
        report["codegree_max"] = json!(deg.codegree_max);
        report["average_degree"] = json!(deg.average_degree.to_string());
        report["cycle_census"] = json!(census.counts);
        report["is_linear"] = json!(census.is_linear());
    } else {
        report["max_degree"] = json!(h.max_degree());
    }
    let mut omitting = serde_json::Map::new();
    for &l in &args.omitting {
        omitting.insert(l.to_string(), serde_json::to_value(omitting_check(&h, l))?);
    }
    report["omitting"] = Value::Object(omitting);
    let mut flowers = serde_json::Map::new();
    for &(l, lambda) in &args.sunflower {
        flowers.insert(format!("{l},{lambda}"), serde_json::to_value(contains_sunflower(&h, l, lambda, cli.budget)?)?);
    }
    report["sunflower"] = Value::Object(flowers);
    if args.fan {
        report["fan"] = serde_json::to_value(contains_fan(&h, cli.budget)?)?;
    }
    print(&report);
    Ok(0)
}
