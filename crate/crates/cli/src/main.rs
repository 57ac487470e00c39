//! Command-line surface for the diam3 toolkit: exact LP values, matching
//! and domination witnesses, neighbouring-set checks, pattern search,
//! lantern extraction, the order-bounding reduction with verifiable
//! certificates, extremal construction builders, and corpus sweeps.
//!
//! Exit codes: 0 = success, 1 = a mathematical check failed (the failure
//! is data, written to the report), 2 = usage error.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use diam3::constructions::{
    build_extremal, content_hash, find_gamma_f_witness, gamma_f_threshold, search_best_order, Family, SearchBudget,
};
use diam3::embed::{planar_embedding, random_planar};
use diam3::frac::{
    gamma_f, max_matching, moore_bound, mu_star, mu_star_double_cover, rho_f,
    tau_star,
};
use diam3::graph::{Graph, GraphError};
use diam3::lanterns::{classify, empty_lantern, extract_nice, max_lantern, Lantern};
use diam3::patterns::{
    contains_pattern, enumerate_neighbouring, extremal_patterns, forbidden_patterns,
    is_neighbouring,
};
use diam3::rat::Rat;
use diam3::reduction::{reduce, verify_certificate, Certificate};

#[derive(Parser)]
#[command(name = "diam3", version, about = "planar diameter-3 graph toolkit")]
struct Cli {
    /// Write a JSON run manifest (command, parameters, seeds, input
    /// hashes, outputs, wall time) to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct InArg {
    /// Input graph file: graph6, sparse6, or JSON.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args, Clone)]
struct OutArg {
    /// Output file (defaults to standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format for graphs.
    #[arg(long, value_parser = ["g6", "json", "dot"], default_value = "g6")]
    format: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact fractional matching number of a graph, as p/q.
    MuStar {
        #[command(flatten)]
        input: InArg,
        /// Also print the optimal edge weighting as JSON.
        #[arg(long)]
        witness: bool,
    },
    /// Exact fractional vertex cover number of a graph, as p/q.
    TauStar {
        #[command(flatten)]
        input: InArg,
        #[arg(long)]
        witness: bool,
    },
    /// Exact fractional domination number (and its packing dual), as p/q.
    GammaF {
        #[command(flatten)]
        input: InArg,
        #[arg(long)]
        witness: bool,
    },
    /// Maximum matching: size and edges.
    Matching {
        #[command(flatten)]
        input: InArg,
    },
    /// Minimum dominating set: size and vertices.
    Dominate {
        #[command(flatten)]
        input: InArg,
    },
    /// Spherical Moore bound for maximum degree Δ and diameter D.
    Moore {
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        diam: u32,
    },
    /// Neighbouring edge-set operations.
    Neighbouring {
        #[command(subcommand)]
        action: NeighbouringCmd,
    },
    /// Searches a graph for a named pattern (3K3, K3+3K2, C7+K2, H1…H4).
    Pattern {
        #[command(flatten)]
        input: InArg,
        /// Pattern name; omit to report all extremal and forbidden hits.
        #[arg(long)]
        name: Option<String>,
    },
    /// Lantern operations over a plane embedding.
    Lantern {
        #[command(subcommand)]
        action: LanternCmd,
    },
    /// Deletes a lantern's interior and reports the isometry check.
    Empty {
        #[command(flatten)]
        input: InArg,
        /// Lantern JSON file (as produced by `lantern find`).
        #[arg(long)]
        lantern: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Runs the order-bounding reduction and writes its certificate.
    Reduce {
        #[command(flatten)]
        input: InArg,
        /// Lantern width parameter.
        #[arg(long, default_value_t = 39)]
        width: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verifies a reduction certificate (all checks re-derived).
    Verify {
        /// Certificate JSON file.
        #[arg(long)]
        cert: PathBuf,
    },
    /// Builds an extremal-order planar diameter-3 graph.
    Construct {
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value = "fhs")]
        family: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Randomized search for the best order at a fixed maximum degree.
    Search {
        #[arg(long)]
        delta: usize,
        /// Seed for the randomized probe (required: runs are reproducible).
        #[arg(long)]
        seed: u64,
        /// Sample budget.
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Runs the configured corpus suites and writes JSON-lines reports.
    Corpus {
        /// Suite configuration (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Report directory.
        #[arg(long)]
        out: PathBuf,
        /// Worker pool size (defaults to the number of cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Subcommand)]
enum NeighbouringCmd {
    /// Checks whether an edge list is neighbouring in the input graph.
    Check {
        #[command(flatten)]
        input: InArg,
        /// Edge set, e.g. "0-1,1-2,4-5".
        #[arg(long)]
        r: String,
    },
    /// Enumerates (maximal) neighbouring edge sets.
    Enumerate {
        #[command(flatten)]
        input: InArg,
        /// Only inclusion-maximal sets.
        #[arg(long)]
        maximal: bool,
    },
}

#[derive(Subcommand)]
enum LanternCmd {
    /// Finds the maximum-width lantern on a hub pair.
    Find {
        #[command(flatten)]
        input: InArg,
        #[arg(long)]
        hub_u: usize,
        #[arg(long)]
        hub_v: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classifies a lantern's flags (dominating, short, chordless, …).
    Classify {
        #[command(flatten)]
        input: InArg,
        #[arg(long)]
        lantern: PathBuf,
    },
    /// Extracts a nice sublantern of at least the given width.
    Extract {
        #[command(flatten)]
        input: InArg,
        #[arg(long)]
        hub_u: usize,
        #[arg(long)]
        hub_v: usize,
        #[arg(long, default_value_t = 39)]
        width: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

// ---------------------------------------------------------------------------
// Run manifest
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct RunManifest {
    command: String,
    parameters: Vec<String>,
    seeds: Vec<u64>,
    input_hashes: Vec<String>,
    output_paths: Vec<String>,
    tool_version: String,
    wall_time_ms: u128,
}

#[derive(Default)]
struct RunTrace {
    seeds: Vec<u64>,
    input_hashes: Vec<String>,
    output_paths: Vec<String>,
}

impl RunTrace {
    fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.input_hashes
            .push(format!("{}:{:016x}", path.display(), content_hash(bytes)));
    }
    fn output(&mut self, path: &Path) {
        self.output_paths.push(path.display().to_string());
    }
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

fn load_graph(path: &Path, trace: &mut RunTrace) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    trace.input(path, text.as_bytes());
    let t = text.trim();
    let g = if t.starts_with('{') {
        Graph::from_json(t)?
    } else {
        Graph::parse_g6_or_s6(t.lines().next().unwrap_or(""))?
    };
    Ok(g)
}

fn emit_graph(g: &Graph, out: &OutArg, trace: &mut RunTrace) -> anyhow::Result<()> {
    let body = match out.format.as_str() {
        "g6" => g.to_graph6() + "\n",
        "json" => g.to_json() + "\n",
        "dot" => g.to_dot(),
        other => anyhow::bail!("unknown format {other}"),
    };
    match &out.out {
        Some(p) => {
            fs::write(p, body)?;
            trace.output(p);
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn parse_edge_list(s: &str) -> anyhow::Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let mut it = part.trim().split('-');
        let a: usize = it
            .next()
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| anyhow::anyhow!("bad edge '{part}', expected a-b"))?;
        let b: usize = it
            .next()
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| anyhow::anyhow!("bad edge '{part}', expected a-b"))?;
        out.push((a, b));
    }
    Ok(out)
}

/// Math-level failure: reported on stdout/report, exit code 1.
struct MathFailure(String);

type CmdResult = anyhow::Result<Result<(), MathFailure>>;

fn value_with_witness(
    name: &str,
    pair: (Rat, diam3::frac::Weighting),
    witness: bool,
) -> CmdResult {
    let (v, w) = pair;
    println!("{v}");
    if witness {
        println!("{}", w.to_json());
    }
    let _ = name;
    Ok(Ok(()))
}

// ---------------------------------------------------------------------------
// Corpus suites
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SuiteConfig {
    name: String,
    #[serde(default = "default_seed")]
    seed: u64,
    #[serde(default = "default_budget")]
    budget: usize,
    /// Suite-specific size cap (catalog order, host order, …).
    #[serde(default)]
    max_n: Option<usize>,
}

fn default_seed() -> u64 {
    1
}
fn default_budget() -> usize {
    100
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CorpusConfig {
    suites: Vec<SuiteConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SuiteRecord {
    key: String,
    pass: bool,
    detail: String,
}

/// One corpus record per checked object, keyed for resumability.
fn run_suite(cfg: &SuiteConfig, done: &BTreeSet<String>) -> anyhow::Result<Vec<SuiteRecord>> {
    use rayon::prelude::*;
    let nine_halves = Rat::frac(9, 2);
    let mut records: Vec<SuiteRecord> = Vec::new();
    match cfg.name.as_str() {
        // Exhaustive small catalog plus random hosts: every maximal
        // neighbouring set has fractional matching value at most 9/2.
        "theorem13-sweep" => {
            let max_n = cfg.max_n.unwrap_or(7).min(9);
            let catalog = diam3::catalog::connected_planar_catalog(max_n)?;
            let mut hosts: Vec<(String, Graph)> = catalog
                .into_iter()
                .enumerate()
                .map(|(i, g)| (format!("cat-{max_n}-{i}"), g))
                .collect();
            for i in 0..cfg.budget {
                let seed = cfg.seed.wrapping_add(i as u64);
                if let Ok(g) = random_planar(6 + (i % 9), None, seed, 50) {
                    hosts.push((format!("rand-{seed}"), g));
                }
            }
            let todo: Vec<_> = hosts.into_iter().filter(|(k, _)| !done.contains(k)).collect();
            records = todo
                .par_iter()
                .map(|(key, g)| {
                    let mut worst = Rat::zero();
                    let sets = enumerate_neighbouring(g, true).unwrap_or_default();
                    for r in &sets {
                        let (sub, _) = g.edge_induced(r);
                        let v = mu_star_double_cover(&sub);
                        if v > worst {
                            worst = v;
                        }
                    }
                    SuiteRecord {
                        key: key.clone(),
                        pass: worst <= nine_halves,
                        detail: format!("max mu_star {worst} over {} maximal sets", sets.len()),
                    }
                })
                .collect();
        }
        // No forbidden subgraph ever appears in an edge-induced graph of a
        // neighbouring set over a planar host.
        "forbidden-sweep" => {
            let keys: Vec<usize> = (0..cfg.budget).filter(|i| !done.contains(&format!("host-{i}"))).collect();
            records = keys
                .par_iter()
                .map(|&i| {
                    let seed = cfg.seed.wrapping_add(i as u64);
                    let n = 6 + (i % (cfg.max_n.unwrap_or(10).saturating_sub(5)));
                    let key = format!("host-{i}");
                    match random_planar(n, None, seed, 50) {
                        Ok(g) => {
                            let sets = enumerate_neighbouring(&g, true).unwrap_or_default();
                            let mut hit = None;
                            'out: for r in &sets {
                                let (sub, _) = g.edge_induced(r);
                                for p in forbidden_patterns() {
                                    if contains_pattern(&sub, &p).is_some() {
                                        hit = Some(p.name);
                                        break 'out;
                                    }
                                }
                            }
                            SuiteRecord {
                                key,
                                pass: hit.is_none(),
                                detail: match hit {
                                    None => format!("{} maximal sets clean", sets.len()),
                                    Some(name) => format!("forbidden {name} appeared"),
                                },
                            }
                        }
                        Err(e) => SuiteRecord {
                            key,
                            pass: true,
                            detail: format!("generator skipped: {e}"),
                        },
                    }
                })
                .collect();
        }
        // Hub-and-spoke hosts: extract a nice lantern and empty it; the
        // remainder must be isometric to the original off the interior.
        "lantern-pipeline" => {
            let keys: Vec<usize> = (0..cfg.budget).filter(|i| !done.contains(&format!("lantern-{i}"))).collect();
            records = keys
                .par_iter()
                .map(|&i| {
                    let width = 6 + (i % 5);
                    let key = format!("lantern-{i}");
                    let g = lantern_host(width, 1 + (i % 3));
                    let run = || -> Result<String, GraphError> {
                        let emb = planar_embedding(&g)
                            .embedding()
                            .ok_or_else(|| GraphError::Other("host not planar".into()))?;
                        let l = max_lantern(&g, &emb, 0, 1)?;
                        let nice = extract_nice(&g, &emb, &l, width)?;
                        let cls = classify(&g, &emb, &nice)?;
                        if !(cls.dominating && cls.short && cls.chordless && cls.hub_faithful && cls.deep) {
                            return Err(GraphError::Other(format!("flags not nice: {cls:?}")));
                        }
                        let (_, _, iso) = empty_lantern(&g, &emb, &nice)?;
                        Ok(format!(
                            "width {} nice; isometry audited over {} pairs",
                            nice.width(),
                            iso.pairs_checked
                        ))
                    };
                    match run() {
                        Ok(detail) => SuiteRecord { key, pass: true, detail },
                        Err(e) => SuiteRecord {
                            key,
                            pass: false,
                            detail: e.to_string(),
                        },
                    }
                })
                .collect();
        }
        // Random planar diameter-3 graphs: reduce, then re-verify the
        // certificate from scratch.
        "reduction-e2e" => {
            let keys: Vec<usize> = (0..cfg.budget).filter(|i| !done.contains(&format!("reduce-{i}"))).collect();
            records = keys
                .par_iter()
                .map(|&i| {
                    let seed = cfg.seed.wrapping_add(i as u64);
                    let key = format!("reduce-{i}");
                    let n = 6 + (i % (cfg.max_n.unwrap_or(12).saturating_sub(5)));
                    let run = || -> Result<String, GraphError> {
                        let g = random_planar(n, Some(3), seed, 400)?;
                        let emb = planar_embedding(&g)
                            .embedding()
                            .ok_or_else(|| GraphError::Other("not planar".into()))?;
                        let cert = reduce(&g, &emb, 39)?;
                        let report = verify_certificate(&cert)?;
                        if !report.all_pass() {
                            return Err(GraphError::Other(format!(
                                "checks failed: {:?}",
                                report.failed()
                            )));
                        }
                        Ok(format!("n {} certificate verified", g.n()))
                    };
                    match run() {
                        Ok(detail) => SuiteRecord { key, pass: true, detail },
                        Err(e) => SuiteRecord {
                            key,
                            pass: false,
                            detail: e.to_string(),
                        },
                    }
                })
                .collect();
        }
        // Fractional-domination search; passes when the threshold 14/3 is
        // reached within budget.
        "gamma-f-search" => {
            let key = format!("gamma-{}", cfg.seed);
            if !done.contains(&key) {
                let w = find_gamma_f_witness(&SearchBudget {
                    samples: cfg.budget,
                    seed: cfg.seed,
                });
                records.push(SuiteRecord {
                    key,
                    pass: w.reached_threshold,
                    detail: format!(
                        "best gamma_f {} on {} vertices (threshold {})",
                        w.value,
                        w.graph.n(),
                        gamma_f_threshold()
                    ),
                });
            }
        }
        other => anyhow::bail!("unknown suite name '{other}'"),
    }
    Ok(records)
}

/// Planar diameter-3 host built around a width-`width` lantern on hubs
/// 0, 1: length-2 axes, a hub edge, and `decorate` extra degree-2
/// vertices per hub hanging into lantern regions.
fn lantern_host(width: usize, decorate: usize) -> Graph {
    let mut g = Graph::new(2 + width);
    for z in 0..width {
        g.add_edge(0, 2 + z);
        g.add_edge(1, 2 + z);
    }
    g.add_edge(0, 1);
    for d in 0..decorate {
        let v = g.add_vertex();
        g.add_edge(v, 0);
        g.add_edge(v, 2 + (d % width));
    }
    g
}

fn cmd_corpus(config: &Path, out_dir: &Path, jobs: Option<usize>, trace: &mut RunTrace) -> CmdResult {
    let text = fs::read_to_string(config)?;
    trace.input(config, text.as_bytes());
    let cfg: CorpusConfig = serde_json::from_str(&text)?;
    if let Some(j) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .ok();
    }
    fs::create_dir_all(out_dir)?;
    let mut total_pass = 0usize;
    let mut total_fail = 0usize;
    let mut summary = Vec::new();
    for suite in &cfg.suites {
        let report_path = out_dir.join(format!("{}.jsonl", suite.name));
        // Resumable: skip keys already present in the report.
        let mut existing: Vec<SuiteRecord> = Vec::new();
        if let Ok(prev) = fs::read_to_string(&report_path) {
            for line in prev.lines() {
                if let Ok(r) = serde_json::from_str::<SuiteRecord>(line) {
                    existing.push(r);
                }
            }
        }
        let done: BTreeSet<String> = existing.iter().map(|r| r.key.clone()).collect();
        let fresh = run_suite(suite, &done)?;
        existing.extend(fresh);
        // Deterministic merge: sorted by record key.
        existing.sort_by(|a, b| a.key.cmp(&b.key));
        existing.dedup_by(|a, b| a.key == b.key);
        let mut body = String::new();
        for r in &existing {
            body.push_str(&serde_json::to_string(r)?);
            body.push('\n');
        }
        fs::write(&report_path, body)?;
        trace.output(&report_path);
        let pass = existing.iter().filter(|r| r.pass).count();
        let fail = existing.len() - pass;
        total_pass += pass;
        total_fail += fail;
        summary.push(serde_json::json!({
            "suite": suite.name,
            "pass": pass,
            "fail": fail,
        }));
    }
    let summary_path = out_dir.join("summary.json");
    fs::write(
        &summary_path,
        serde_json::to_string_pretty(&serde_json::json!({
            "suites": summary,
            "pass": total_pass,
            "fail": total_fail,
        }))? + "\n",
    )?;
    trace.output(&summary_path);
    println!("{total_pass} passed, {total_fail} failed; reports in {}", out_dir.display());
    if total_fail > 0 {
        return Ok(Err(MathFailure(format!("{total_fail} corpus records failed"))));
    }
    Ok(Ok(()))
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

fn dispatch(cmd: &Cmd, trace: &mut RunTrace) -> CmdResult {
    match cmd {
        Cmd::MuStar { input, witness } => {
            let g = load_graph(&input.input, trace)?;
            value_with_witness("mu-star", mu_star(&g), *witness)
        }
        Cmd::TauStar { input, witness } => {
            let g = load_graph(&input.input, trace)?;
            value_with_witness("tau-star", tau_star(&g), *witness)
        }
        Cmd::GammaF { input, witness } => {
            let g = load_graph(&input.input, trace)?;
            let (v, w) = gamma_f(&g);
            let (dual, _) = rho_f(&g);
            println!("{v}");
            if v != dual {
                return Ok(Err(MathFailure(format!(
                    "duality violated: gamma_f {v} vs rho_f {dual}"
                ))));
            }
            if *witness {
                println!("{}", w.to_json());
            }
            Ok(Ok(()))
        }
        Cmd::Matching { input } => {
            let g = load_graph(&input.input, trace)?;
            let m = max_matching(&g);
            println!("{}", m.len());
            for (a, b) in m {
                println!("{a}-{b}");
            }
            Ok(Ok(()))
        }
        Cmd::Dominate { input } => {
            let g = load_graph(&input.input, trace)?;
            let d = g.min_dominating_set()?;
            println!("{}", d.len());
            println!(
                "{}",
                d.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            );
            Ok(Ok(()))
        }
        Cmd::Moore { delta, diam } => {
            println!("{}", moore_bound(*delta, *diam)?);
            Ok(Ok(()))
        }
        Cmd::Neighbouring { action } => match action {
            NeighbouringCmd::Check { input, r } => {
                let g = load_graph(&input.input, trace)?;
                let edges = parse_edge_list(r)?;
                let (ok, witness) = is_neighbouring(&g, &edges)?;
                if ok {
                    println!("neighbouring");
                    Ok(Ok(()))
                } else {
                    let (e, f) = witness.unwrap();
                    println!("not neighbouring: {}-{} vs {}-{}", e.0, e.1, f.0, f.1);
                    Ok(Err(MathFailure("edge set is not neighbouring".into())))
                }
            }
            NeighbouringCmd::Enumerate { input, maximal } => {
                let g = load_graph(&input.input, trace)?;
                let sets = enumerate_neighbouring(&g, *maximal)?;
                for r in &sets {
                    let s: Vec<String> = r.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                    println!("{}", s.join(","));
                }
                Ok(Ok(()))
            }
        },
        Cmd::Pattern { input, name } => {
            let g = load_graph(&input.input, trace)?;
            let pats: Vec<_> = extremal_patterns()
                .into_iter()
                .chain(forbidden_patterns())
                .filter(|p| name.as_deref().map_or(true, |n| n == p.name))
                .collect();
            if pats.is_empty() {
                anyhow::bail!("unknown pattern name {:?}", name);
            }
            let mut any = false;
            for p in pats {
                if let Some(map) = contains_pattern(&g, &p) {
                    any = true;
                    let s: Vec<String> = map.iter().map(|v| v.to_string()).collect();
                    println!("{}: {}", p.name, s.join(" "));
                }
            }
            if !any {
                println!("no pattern found");
            }
            Ok(Ok(()))
        }
        Cmd::Lantern { action } => match action {
            LanternCmd::Find { input, hub_u, hub_v, out } => {
                let g = load_graph(&input.input, trace)?;
                let emb = planar_embedding(&g)
                    .embedding()
                    .ok_or_else(|| anyhow::anyhow!("graph is not planar"))?;
                let l = max_lantern(&g, &emb, *hub_u, *hub_v)?;
                let js = l.to_json(None);
                match out {
                    Some(p) => {
                        fs::write(p, js + "\n")?;
                        trace.output(p);
                    }
                    None => println!("{js}"),
                }
                Ok(Ok(()))
            }
            LanternCmd::Classify { input, lantern } => {
                let g = load_graph(&input.input, trace)?;
                let ltext = fs::read_to_string(lantern)?;
                trace.input(lantern, ltext.as_bytes());
                let l = Lantern::from_json(&ltext)?;
                let emb = planar_embedding(&g)
                    .embedding()
                    .ok_or_else(|| anyhow::anyhow!("graph is not planar"))?;
                let cls = classify(&g, &emb, &l)?;
                println!("{}", l.to_json(Some(&cls)));
                Ok(Ok(()))
            }
            LanternCmd::Extract { input, hub_u, hub_v, width, out } => {
                let g = load_graph(&input.input, trace)?;
                let emb = planar_embedding(&g)
                    .embedding()
                    .ok_or_else(|| anyhow::anyhow!("graph is not planar"))?;
                let l = max_lantern(&g, &emb, *hub_u, *hub_v)?;
                let nice = extract_nice(&g, &emb, &l, *width)?;
                let cls = classify(&g, &emb, &nice)?;
                let js = nice.to_json(Some(&cls));
                match out {
                    Some(p) => {
                        fs::write(p, js + "\n")?;
                        trace.output(p);
                    }
                    None => println!("{js}"),
                }
                Ok(Ok(()))
            }
        },
        Cmd::Empty { input, lantern, out } => {
            let g = load_graph(&input.input, trace)?;
            let ltext = fs::read_to_string(lantern)?;
            trace.input(lantern, ltext.as_bytes());
            let l = Lantern::from_json(&ltext)?;
            let emb = planar_embedding(&g)
                .embedding()
                .ok_or_else(|| anyhow::anyhow!("graph is not planar"))?;
            let (h, _map, iso) = empty_lantern(&g, &emb, &l)?;
            emit_graph(&h, out, trace)?;
            eprintln!("isometry audited over {} pairs", iso.pairs_checked);
            Ok(Ok(()))
        }
        Cmd::Reduce { input, width, out } => {
            let g = load_graph(&input.input, trace)?;
            let emb = planar_embedding(&g)
                .embedding()
                .ok_or_else(|| anyhow::anyhow!("graph is not planar"))?;
            let cert = reduce(&g, &emb, *width)?;
            let js = cert.to_json();
            match out {
                Some(p) => {
                    fs::write(p, js + "\n")?;
                    trace.output(p);
                }
                None => println!("{js}"),
            }
            Ok(Ok(()))
        }
        Cmd::Verify { cert } => {
            let text = fs::read_to_string(cert)?;
            trace.input(cert, text.as_bytes());
            let c = Certificate::from_json(&text)?;
            let report = verify_certificate(&c)?;
            println!("{}", report.summary());
            if report.all_pass() {
                Ok(Ok(()))
            } else {
                Ok(Err(MathFailure(format!(
                    "certificate checks failed: {:?}",
                    report.failed()
                ))))
            }
        }
        Cmd::Construct { delta, family, out } => {
            let fam: Family = family.parse()?;
            let g = build_extremal(*delta, fam)?;
            emit_graph(&g, out, trace)?;
            Ok(Ok(()))
        }
        Cmd::Search { delta, seed, budget, out } => {
            trace.seeds.push(*seed);
            let (g, order) = search_best_order(
                *delta,
                &SearchBudget {
                    samples: *budget,
                    seed: *seed,
                },
            )?;
            eprintln!("order {order}");
            emit_graph(&g, out, trace)?;
            Ok(Ok(()))
        }
        Cmd::Corpus { config, out, jobs } => cmd_corpus(config, out, *jobs, trace),
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = Cli::parse();
    let mut trace = RunTrace::default();
    let result = dispatch(&cli.cmd, &mut trace);
    if let Some(path) = &cli.manifest {
        let manifest = RunManifest {
            command: std::env::args().nth(1).unwrap_or_default(),
            parameters: std::env::args().skip(1).collect(),
            seeds: trace.seeds.clone(),
            input_hashes: trace.input_hashes.clone(),
            output_paths: trace.output_paths.clone(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_ms: started.elapsed().as_millis(),
        };
        if let Ok(js) = serde_json::to_string_pretty(&manifest) {
            let _ = fs::write(path, js + "\n");
        }
    }
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(MathFailure(msg))) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
