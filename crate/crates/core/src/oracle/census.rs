//! Exhaustive small-order census: every graph with the required minimum
//! degree, every unordered pair, one record per pair.
//!
//! Graphs with δ(G) ≥ k are enumerated through their complements, which have
//! maximum degree at most n − 1 − k and are far fewer to walk.

use std::collections::{HashMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::canon::{canonical_form, canonical_max_degree, labeled_max_degree};
use super::search::{find_cycle_with_distance, Outcome, SearchBudget};
use crate::certificate::{verify_certificate, CycleCertificate};
use crate::graph::Graph;
use crate::io::{read_graph6_catalog, to_graph6, IoError};
use crate::seeds;

/// Largest order for which labelled enumeration is allowed.
pub const LABELED_MAX_N: usize = 8;
/// Largest order for the in-repo canonical enumerator.
pub const CANONICAL_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Enumeration {
    AllLabeled,
    Canonical,
    Catalog(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairPolicy {
    AllPairs,
    /// `count` pairs per graph, drawn from a seed derived from the graph id.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairOutcome {
    Found,
    Absent,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub graph_id: String,
    pub n: usize,
    pub x: usize,
    pub y: usize,
    pub d: usize,
    pub outcome: PairOutcome,
    pub order: Option<Vec<usize>>,
    pub nodes: u64,
    pub elapsed_ms: f64,
}

impl CensusRecord {
    /// Equality that ignores timing, for comparing runs.
    pub fn same_result(&self, other: &CensusRecord) -> bool {
        let strip = |r: &CensusRecord| CensusRecord { elapsed_ms: 0.0, ..r.clone() };
        strip(self) == strip(other)
    }
}

/// What a route reports for one `(G, x, y, d)` query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairResult {
    pub outcome: PairOutcome,
    pub order: Option<Vec<usize>>,
    pub nodes: u64,
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub n: usize,
    /// Defaults to the smallest integer ≥ n/2 + 1.
    pub min_degree: Option<usize>,
    pub pairs: PairPolicy,
    pub enumeration: Enumeration,
    pub budget: SearchBudget,
    pub output: Option<PathBuf>,
}

impl CensusConfig {
    pub fn new(n: usize) -> Self {
        CensusConfig {
            n,
            min_degree: None,
            pairs: PairPolicy::AllPairs,
            enumeration: if n <= LABELED_MAX_N { Enumeration::AllLabeled } else { Enumeration::Canonical },
            budget: SearchBudget::unlimited(),
            output: None,
        }
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree.unwrap_or((self.n + 3) / 2)
    }

    pub fn target(&self) -> usize {
        self.n / 2
    }
}

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("{mode} enumeration is infeasible for n = {n}")]
    Infeasible { mode: &'static str, n: usize },
    #[error("catalog graph has order {got}, census order is {n}")]
    CatalogOrder { n: usize, got: usize },
    #[error("route returned a certificate that fails verification on {graph_id} ({x},{y})")]
    BadCertificate { graph_id: String, x: usize, y: usize },
    #[error("corrupt census file {path}: {msg}")]
    Corrupt { path: String, msg: String },
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    File(#[from] std::io::Error),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub graphs: usize,
    pub pairs: usize,
    pub found: usize,
    pub absent: usize,
    pub exhausted: usize,
}

impl CensusSummary {
    pub fn of(records: &[CensusRecord]) -> Self {
        let graphs: HashSet<&str> = records.iter().map(|r| r.graph_id.as_str()).collect();
        let count = |o| records.iter().filter(|r| r.outcome == o).count();
        CensusSummary {
            graphs: graphs.len(),
            pairs: records.len(),
            found: count(PairOutcome::Found),
            absent: count(PairOutcome::Absent),
            exhausted: count(PairOutcome::Exhausted),
        }
    }
}

/// The graphs the census walks, each paired with its id.
pub fn enumerate(cfg: &CensusConfig) -> Result<Vec<(String, Graph)>, CensusError> {
    let n = cfg.n;
    let k = cfg.min_degree();
    let graphs: Vec<Graph> = match &cfg.enumeration {
        Enumeration::AllLabeled => {
            if n > LABELED_MAX_N {
                return Err(CensusError::Infeasible { mode: "labeled", n });
            }
            if k >= n {
                vec![]
            } else {
                labeled_max_degree(n, n - 1 - k).iter().map(Graph::complement).collect()
            }
        }
        Enumeration::Canonical => {
            if n > CANONICAL_MAX_N {
                return Err(CensusError::Infeasible { mode: "canonical", n });
            }
            if k >= n {
                vec![]
            } else {
                canonical_max_degree(n, n - 1 - k).iter().map(|h| canonical_form(&h.complement()).0).collect()
            }
        }
        Enumeration::Catalog(path) => {
            let mut out = vec![];
            for g in read_graph6_catalog(path)? {
                if g.n() != n {
                    return Err(CensusError::CatalogOrder { n, got: g.n() });
                }
                if g.min_degree() >= k {
                    out.push(g);
                }
            }
            out
        }
    };
    let canonical_ids = !matches!(cfg.enumeration, Enumeration::AllLabeled);
    Ok(graphs
        .into_iter()
        .map(|g| {
            let id = if canonical_ids { to_graph6(&canonical_form(&g).0) } else { to_graph6(&g) };
            (id, g)
        })
        .collect())
}

pub fn pairs_for(n: usize, graph_id: &str, policy: PairPolicy) -> Vec<(usize, usize)> {
    let all: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    match policy {
        PairPolicy::AllPairs => all,
        PairPolicy::Sampled { count, seed } => {
            let mut rng = seeds::rng_for(seed, "census-pairs", seeds::fnv1a(graph_id.as_bytes()));
            let mut chosen: Vec<_> = all.choose_multiple(&mut rng, count.min(all.len())).copied().collect();
            chosen.sort_unstable();
            chosen
        }
    }
}

/// Direct oracle route.
pub fn oracle_route(budget: SearchBudget) -> impl Fn(&Graph, usize, usize, usize) -> PairResult + Sync {
    move |g, x, y, d| {
        let r = find_cycle_with_distance(g, x, y, d, budget).expect("census passes valid arguments");
        match r.outcome {
            Outcome::Found(c) => PairResult { outcome: PairOutcome::Found, order: Some(c.order), nodes: r.nodes },
            Outcome::Absent => PairResult { outcome: PairOutcome::Absent, order: None, nodes: r.nodes },
            Outcome::Exhausted => PairResult { outcome: PairOutcome::Exhausted, order: None, nodes: r.nodes },
        }
    }
}

fn load_existing(path: &Path) -> Result<Vec<CensusRecord>, CensusError> {
    let Ok(f) = File::open(path) else {
        return Ok(vec![]);
    };
    let lines: Vec<String> = BufReader::new(f).lines().collect::<Result<_, _>>()?;
    let last = lines.iter().rposition(|l| !l.trim().is_empty());
    let mut out = vec![];
    for (i, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(line) {
            Ok(r) => out.push(r),
            // a torn final line from an interrupted run is dropped
            Err(_) if Some(i) == last => {}
            Err(_) => {
                return Err(CensusError::Corrupt { path: path.display().to_string(), msg: format!("line {}", i + 1) })
            }
        }
    }
    Ok(out)
}

/// Runs the census with the oracle route.
pub fn census(cfg: &CensusConfig) -> Result<Vec<CensusRecord>, CensusError> {
    census_with(cfg, oracle_route(cfg.budget))
}

/// Runs the census with an arbitrary route. Graphs already fully recorded in
/// `cfg.output` are skipped; new records are appended one graph at a time.
/// The result holds every record (old and new) sorted by `(graph_id, x, y)`.
pub fn census_with<F>(cfg: &CensusConfig, route: F) -> Result<Vec<CensusRecord>, CensusError>
where
    F: Fn(&Graph, usize, usize, usize) -> PairResult + Sync,
{
    let d = cfg.target();
    let graphs = enumerate(cfg)?;
    let mut existing = match &cfg.output {
        Some(p) => load_existing(p)?,
        None => vec![],
    };
    let mut per_graph: HashMap<&str, usize> = HashMap::new();
    for r in &existing {
        *per_graph.entry(r.graph_id.as_str()).or_default() += 1;
    }
    let todo: Vec<&(String, Graph)> = graphs
        .iter()
        .filter(|(id, _)| per_graph.get(id.as_str()).copied() != Some(pairs_for(cfg.n, id, cfg.pairs).len()))
        .collect();
    let done: HashSet<String> = graphs
        .iter()
        .map(|(id, _)| id.clone())
        .filter(|id| !todo.iter().any(|(t, _)| t == id))
        .collect();
    existing.retain(|r| done.contains(&r.graph_id));

    let sink = match &cfg.output {
        Some(p) => {
            // rewrite so that partial graphs from an interrupted run vanish
            let mut f = File::create(p)?;
            for r in &existing {
                writeln!(f, "{}", serde_json::to_string(r).expect("records serialise"))?;
            }
            Some(Mutex::new(OpenOptions::new().append(true).open(p)?))
        }
        None => None,
    };

    let fresh: Result<Vec<Vec<CensusRecord>>, CensusError> = todo
        .par_iter()
        .map(|(id, g)| {
            let mut recs = vec![];
            for (x, y) in pairs_for(cfg.n, id, cfg.pairs) {
                let t = Instant::now();
                let r = route(g, x, y, d);
                if let Some(order) = &r.order {
                    let c = CycleCertificate { order: order.clone(), x, y, claimed_distance: d };
                    if !verify_certificate(g, &c, d).is_accept() {
                        return Err(CensusError::BadCertificate { graph_id: id.clone(), x, y });
                    }
                }
                recs.push(CensusRecord {
                    graph_id: id.clone(),
                    n: cfg.n,
                    x,
                    y,
                    d,
                    outcome: r.outcome,
                    order: r.order,
                    nodes: r.nodes,
                    elapsed_ms: t.elapsed().as_secs_f64() * 1e3,
                });
            }
            if let Some(sink) = &sink {
                let mut text = String::new();
                for r in &recs {
                    text.push_str(&serde_json::to_string(r).expect("records serialise"));
                    text.push('\n');
                }
                let mut f = sink.lock().expect("sink lock");
                f.write_all(text.as_bytes())?;
                f.flush()?;
            }
            Ok(recs)
        })
        .collect();
    let mut all = existing;
    all.extend(fresh?.into_iter().flatten());
    all.sort_by(|a, b| (&a.graph_id, a.x, a.y).cmp(&(&b.graph_id, b.x, b.y)));
    Ok(all)
}
