use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hamlocate::certificate::{verify_certificate, CycleCertificate, Verdict};
use hamlocate::harness::{Family, InstanceSpec, RunConfig};
use hamlocate::io::{read_graph, write_graph, Format, LabeledGraph};
use hamlocate::oracle::census::{census_with, oracle_route, CensusConfig, CensusSummary, Enumeration, PairOutcome, PairPolicy};
use hamlocate::oracle::SearchBudget;
use hamlocate::regularity::Params;
use hamlocate::solvers::{dispatch, dispatch_route, DispatchConfig, DispatchError, SolveReport};
use hamlocate::Graph;

#[derive(Parser)]
#[command(name = "hamlocate", version, about = "Hamiltonian cycles with two vertices at distance ⌊n/2⌋")]
struct Cli {
    /// Worker threads (also HAMLOCATE_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one instance and print its report as JSON.
    Solve(SolveArgs),
    /// Check a certificate against a graph.
    Verify(VerifyArgs),
    /// Exhaustive small-order census.
    Census(CensusArgs),
    /// Generate an instance and write it to a file.
    Gen(GenArgs),
    /// Timing table across families and sizes.
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
struct InstanceArgs {
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Degree surplus over the Dirac bound (random-dirac).
    #[arg(long, default_value_t = 0)]
    surplus: usize,
    /// Noise (ec1) or cut density (ec2).
    #[arg(long, default_value_t = 0.02)]
    noise: f64,
}

impl InstanceArgs {
    fn spec(&self) -> Result<InstanceSpec, CliError> {
        let fam = self.family.as_deref().ok_or_else(|| CliError::usage("need --family or --graph"))?;
        let family = Family::parse(fam).ok_or_else(|| CliError::usage(format!("unknown family {fam}")))?;
        let n = self.n.ok_or_else(|| CliError::usage("--family needs --n"))?;
        Ok(InstanceSpec { family, n, seed: self.seed, surplus: self.surplus, noise: self.noise })
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Graph file (graph6 by `.g6` extension, else edge list).
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    #[command(flatten)]
    inst: InstanceArgs,
    /// Vertex id, or label for labelled edge lists.
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 14)]
    small_cutoff: usize,
    #[arg(long, default_value_t = 18)]
    oracle_max: usize,
    #[arg(long, default_value_t = 3)]
    retries: usize,
    #[arg(long, default_value_t = 0.05)]
    classify_alpha: f64,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    oracle_nodes: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    /// A certificate (`order`, `x`, `y`, `claimed_distance`) or a solve report.
    certificate: PathBuf,
    /// Defaults to ⌊n/2⌋.
    #[arg(long)]
    target: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Oracle,
    Dispatch,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumMode {
    Labeled,
    Canonical,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    n: usize,
    /// Last order of the range (defaults to `--n`).
    #[arg(long)]
    to: Option<usize>,
    #[arg(long, value_enum, default_value = "oracle")]
    route: Route,
    /// Labeled for n ≤ 8, canonical above, unless given.
    #[arg(long, value_enum)]
    enumeration: Option<EnumMode>,
    /// graph6 catalog file to walk instead of enumerating.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Pairs per graph; all pairs if omitted.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    min_degree: Option<usize>,
    #[arg(long)]
    oracle_nodes: Option<u64>,
    /// Oracle cutoff for the dispatch route; 0 forces odd orders through
    /// the reduction and even orders through the constructive solvers first.
    #[arg(long, default_value_t = 0)]
    small_cutoff: usize,
    /// Directory for JSON-lines records; reruns resume from it.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "random-dirac,ec1,ec2")]
    families: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "200,400,1000")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    seeds: u64,
    /// Emit JSON lines instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Debug)]
struct CliError {
    kind: &'static str,
    message: String,
    code: u8,
}

impl CliError {
    fn usage(m: impl Into<String>) -> Self {
        CliError { kind: "usage", message: m.into(), code: 2 }
    }
    fn input(m: impl ToString) -> Self {
        CliError { kind: "input", message: m.to_string(), code: 2 }
    }
    fn contract(e: DispatchError) -> Self {
        CliError { kind: "contract", message: e.to_string(), code: 3 }
    }
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string(v).expect("serialisable"));
}

fn load(graph: &Option<PathBuf>, inst: &InstanceArgs) -> Result<LabeledGraph, CliError> {
    match graph {
        Some(p) => read_graph(p).map_err(|e| CliError::input(format!("{}: {e}", p.display()))),
        None => Ok(LabeledGraph::unlabeled(inst.spec()?.generate().map_err(CliError::input)?)),
    }
}

fn vertex(g: &LabeledGraph, s: &str) -> Result<usize, CliError> {
    g.id_of(s)
        .or_else(|| s.parse().ok().filter(|&v| v < g.graph.n()))
        .ok_or_else(|| CliError::input(format!("no vertex {s}")))
}

fn budget(nodes: Option<u64>) -> SearchBudget {
    SearchBudget { node_limit: nodes, time_limit: None }
}

fn solve(a: SolveArgs) -> Result<ExitCode, CliError> {
    let g = load(&a.graph, &a.inst)?;
    let (x, y) = (vertex(&g, &a.x)?, vertex(&g, &a.y)?);
    let mut params = Params::pipeline();
    params.eps = a.eps.unwrap_or(params.eps);
    params.d = a.d.unwrap_or(params.d);
    params.validate().map_err(|e| CliError::usage(e.to_string()))?;
    let mut cfg = DispatchConfig {
        small_cutoff: a.small_cutoff,
        oracle_max: a.oracle_max,
        retries: a.retries,
        classify_alpha: a.classify_alpha,
        params,
        seed: a.inst.seed,
        ..DispatchConfig::default()
    };
    if a.oracle_nodes.is_some() {
        cfg.oracle_budget.node_limit = a.oracle_nodes;
    }
    let report = dispatch(&g.graph, x, y, &cfg).map_err(CliError::contract)?;
    let text = serde_json::to_string(&report).expect("serialisable");
    match &a.out {
        Some(p) => fs::write(p, text + "\n").map_err(CliError::input)?,
        None => println!("{text}"),
    }
    Ok(if report.verified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn read_certificate(path: &Path) -> Result<CycleCertificate, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    if let Ok(c) = serde_json::from_str::<CycleCertificate>(&text) {
        return Ok(c);
    }
    let r: SolveReport =
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: not a certificate: {e}", path.display())))?;
    let order = r.certificate.ok_or_else(|| CliError::input("report carries no certificate"))?;
    // the claimed distance of a report is its target
    Ok(CycleCertificate { order, x: r.x, y: r.y, claimed_distance: r.target })
}

fn verify(a: VerifyArgs) -> Result<ExitCode, CliError> {
    let g = read_graph(&a.graph).map_err(|e| CliError::input(format!("{}: {e}", a.graph.display())))?;
    let c = read_certificate(&a.certificate)?;
    let target = a.target.unwrap_or(g.graph.n() / 2);
    let verdict = verify_certificate(&g.graph, &c, target);
    let message = match &verdict {
        Verdict::Accept => "accepted".to_string(),
        Verdict::Reject(r) => r.to_string(),
    };
    print_json(&json!({ "verdict": verdict, "message": message, "target": target }));
    Ok(if verdict.is_accept() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn census_cmd(a: CensusArgs) -> Result<ExitCode, CliError> {
    let last = a.to.unwrap_or(a.n);
    if last < a.n {
        return Err(CliError::usage("--to is below --n"));
    }
    if let Some(dir) = &a.out_dir {
        fs::create_dir_all(dir).map_err(CliError::input)?;
    }
    let mut failures = 0;
    for n in a.n..=last {
        let mut cfg = CensusConfig::new(n);
        cfg.min_degree = a.min_degree;
        cfg.budget = budget(a.oracle_nodes);
        if let Some(count) = a.sample {
            cfg.pairs = PairPolicy::Sampled { count, seed: a.seed };
        }
        match (&a.catalog, a.enumeration) {
            (Some(p), _) => cfg.enumeration = Enumeration::Catalog(p.clone()),
            (None, Some(EnumMode::Labeled)) => cfg.enumeration = Enumeration::AllLabeled,
            (None, Some(EnumMode::Canonical)) => cfg.enumeration = Enumeration::Canonical,
            (None, None) => {}
        }
        let routes: &[Route] = match a.route {
            Route::Both => &[Route::Oracle, Route::Dispatch],
            r => if r == Route::Oracle { &[Route::Oracle] } else { &[Route::Dispatch] },
        };
        let mut results = vec![];
        for &route in routes {
            let name = if route == Route::Oracle { "oracle" } else { "dispatch" };
            cfg.output = a.out_dir.as_ref().map(|d| d.join(format!("census-n{n}-{name}.jsonl")));
            let records = match route {
                Route::Oracle => census_with(&cfg, oracle_route(cfg.budget)),
                _ => {
                    let dc = DispatchConfig {
                        seed: a.seed,
                        small_cutoff: a.small_cutoff,
                        oracle_budget: cfg.budget,
                        ..DispatchConfig::default()
                    };
                    census_with(&cfg, dispatch_route(dc))
                }
            }
            .map_err(CliError::input)?;
            let s = CensusSummary::of(&records);
            let bad = s.absent + s.exhausted;
            failures += bad;
            print_json(&json!({ "n": n, "route": name, "summary": s, "failures": bad }));
            results.push(records);
        }
        if let [o, d] = &results[..] {
            let disagree = o
                .iter()
                .zip(d)
                .filter(|(a, b)| (a.outcome == PairOutcome::Found) != (b.outcome == PairOutcome::Found))
                .count();
            failures += disagree;
            print_json(&json!({ "n": n, "route": "agreement", "disagreements": disagree }));
        }
    }
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn gen(a: GenArgs) -> Result<ExitCode, CliError> {
    let spec = a.inst.spec()?;
    let g = spec.generate().map_err(CliError::input)?;
    write_graph(&a.out, &g, Format::from_path(&a.out)).map_err(CliError::input)?;
    print_json(&json!({
        "path": a.out, "spec": spec, "n": g.n(), "edges": g.edge_count(), "min_degree": g.min_degree(),
    }));
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BenchRow {
    family: String,
    n: usize,
    runs: u64,
    solved: u64,
    mean_ms: f64,
    max_ms: f64,
    methods: Vec<String>,
}

fn bench_one(family: Family, n: usize, seeds: u64) -> Result<BenchRow, CliError> {
    let mut row = BenchRow { family: family.name().into(), n, runs: seeds, solved: 0, mean_ms: 0.0, max_ms: 0.0, methods: vec![] };
    for seed in 0..seeds {
        let g: Graph = InstanceSpec::new(family, n, seed).generate().map_err(CliError::input)?;
        let cfg = DispatchConfig { seed, ..DispatchConfig::default() };
        let r = dispatch(&g, 0, n / 2, &cfg).map_err(CliError::contract)?;
        row.solved += r.verified as u64;
        row.mean_ms += r.total_ms / seeds as f64;
        row.max_ms = row.max_ms.max(r.total_ms);
        let m = r.method.map_or("none", |m| m.name()).to_string();
        if !row.methods.contains(&m) {
            row.methods.push(m);
        }
    }
    Ok(row)
}

fn bench(a: BenchArgs) -> Result<ExitCode, CliError> {
    if !a.json {
        println!("{:<22} {:>6} {:>7} {:>10} {:>10}  methods", "family", "n", "solved", "mean ms", "max ms");
    }
    for f in &a.families {
        let family = Family::parse(f).ok_or_else(|| CliError::usage(format!("unknown family {f}")))?;
        for &n in &a.sizes {
            let row = bench_one(family, n, a.seeds)?;
            if a.json {
                print_json(&row);
            } else {
                println!(
                    "{:<22} {:>6} {:>3}/{:<3} {:>10.1} {:>10.1}  {}",
                    row.family,
                    row.n,
                    row.solved,
                    row.runs,
                    row.mean_ms,
                    row.max_ms,
                    row.methods.join(",")
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    RunConfig { workers: cli.threads, ..RunConfig::default() }.install_pool();
    let res = match cli.cmd {
        Cmd::Solve(a) => solve(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Census(a) => census_cmd(a),
        Cmd::Gen(a) => gen(a),
        Cmd::Bench(a) => bench(a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            print_json(&json!({ "error": e.kind, "message": e.message }));
            ExitCode::from(e.code)
        }
    }
}
