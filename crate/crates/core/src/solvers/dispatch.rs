//! Routes an instance to the oracle or a constructive solver, falls back on
//! failure, and re-verifies whatever comes out.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::classify::{classify_detailed, Classification, ClassifyReport};
use super::odd::reduce_odd;
use super::{solve_ec1, solve_ec2, solve_nonextremal, Construction, SolverError, StageTiming};
use crate::certificate::{verify_certificate, CycleCertificate, Verdict};
use crate::graph::Graph;
use crate::oracle::census::{PairOutcome, PairResult};
use crate::oracle::{find_cycle_with_distance, Outcome, SearchBudget};
use crate::regularity::Params;
use crate::seeds;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Oracle,
    NonExtremal,
    Ec1,
    Ec2,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::NonExtremal => "non_extremal",
            Method::Ec1 => "ec1",
            Method::Ec2 => "ec2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispatchConfig {
    /// Orders up to this go straight to the oracle.
    pub small_cutoff: usize,
    /// Largest order the oracle is tried on as a last resort.
    pub oracle_max: usize,
    pub oracle_budget: SearchBudget,
    /// Pipeline parameters; the extremal solvers only read `alpha`.
    pub params: Params,
    /// Cut-density threshold for the classifier. Looser than `params.alpha`
    /// since the extremal solvers tolerate far more than the proof's constant.
    pub classify_alpha: f64,
    pub classify_effort: usize,
    /// Attempts per constructive solver, each with its own derived seed.
    pub retries: usize,
    pub seed: u64,
}

impl Default for DispatchConfig {
    fn default() -> Self {
        DispatchConfig {
            small_cutoff: 14,
            oracle_max: 18,
            oracle_budget: SearchBudget { node_limit: Some(50_000_000), time_limit: Some(Duration::from_secs(30)) },
            params: Params::pipeline(),
            classify_alpha: 0.05,
            classify_effort: 50,
            retries: 3,
            seed: 0,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DispatchError {
    #[error("minimum degree {min_degree} below n/2 + 1 for n = {n}")]
    DegreeTooLow { n: usize, min_degree: usize },
    #[error("x and y must be distinct vertices below n = {n}")]
    BadPair { n: usize },
    #[error("need n ≥ 3, got {0}")]
    TooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub method: Method,
    pub seed: u64,
    /// Order of the graph the attempt ran on (n − 1 after odd reduction).
    pub n: usize,
    pub ok: bool,
    pub error: Option<String>,
    pub ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub class: String,
    pub exact: bool,
    pub max_cut_density: f64,
    pub min_cut_density: f64,
}

impl From<&ClassifyReport> for ClassSummary {
    fn from(r: &ClassifyReport) -> Self {
        ClassSummary {
            class: r.verdict.name().into(),
            exact: r.exact,
            max_cut_density: r.max_cut.cut.value(),
            min_cut_density: r.min_cut.cut.value(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub n: usize,
    pub x: usize,
    pub y: usize,
    pub target: usize,
    pub seed: u64,
    pub success: bool,
    pub method: Option<Method>,
    pub certificate: Option<Vec<usize>>,
    pub verified: bool,
    pub verdict: Option<Verdict>,
    pub classification: Option<ClassSummary>,
    /// Vertex removed by the odd-order reduction.
    pub odd_removed: Option<usize>,
    pub stages: Vec<StageTiming>,
    pub notes: serde_json::Value,
    pub attempts: Vec<Attempt>,
    pub failure: Option<String>,
    pub total_ms: f64,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

struct Found {
    method: Method,
    order: Vec<usize>,
    stages: Vec<StageTiming>,
    notes: serde_json::Value,
}

struct Run<'a> {
    cfg: &'a DispatchConfig,
    attempts: Vec<Attempt>,
    classification: Option<ClassSummary>,
}

impl Run<'_> {
    fn oracle(&mut self, g: &Graph, x: usize, y: usize) -> Option<Found> {
        let t = Instant::now();
        let res = find_cycle_with_distance(g, x, y, g.n() / 2, self.cfg.oracle_budget);
        let (found, error) = match res {
            Ok(r) => match r.outcome {
                Outcome::Found(c) => (Some(c.order), None),
                Outcome::Absent => (None, Some(format!("no such cycle ({} nodes)", r.nodes))),
                Outcome::Exhausted => (None, Some(format!("budget exhausted after {} nodes", r.nodes))),
            },
            Err(e) => (None, Some(e.to_string())),
        };
        let elapsed = ms(t.elapsed());
        self.attempts.push(Attempt {
            method: Method::Oracle,
            seed: 0,
            n: g.n(),
            ok: found.is_some(),
            error,
            ms: elapsed,
        });
        found.map(|order| Found {
            method: Method::Oracle,
            order,
            stages: vec![StageTiming { stage: "oracle".into(), ms: elapsed }],
            notes: serde_json::Value::Null,
        })
    }

    fn constructive(&mut self, g: &Graph, x: usize, y: usize, method: Method, split: &(Vec<usize>, Vec<usize>)) -> Option<Found> {
        let p = &self.cfg.params;
        for r in 0..self.cfg.retries.max(1) {
            let seed = seeds::derive_seed(self.cfg.seed, method.name(), r as u64);
            let t = Instant::now();
            let res: Result<Construction, SolverError> = match method {
                Method::NonExtremal => solve_nonextremal(g, x, y, p, seed),
                Method::Ec1 => solve_ec1(g, x, y, &split.0, &split.1, p, seed),
                Method::Ec2 => solve_ec2(g, x, y, &split.0, &split.1, p, seed),
                Method::Oracle => unreachable!("oracle is not constructive"),
            };
            let ok = res.is_ok();
            self.attempts.push(Attempt {
                method,
                seed,
                n: g.n(),
                ok,
                error: res.as_ref().err().map(|e| e.to_string()),
                ms: ms(t.elapsed()),
            });
            if let Ok(c) = res {
                return Some(Found { method, order: c.order, stages: c.stages, notes: c.notes });
            }
            // the extremal solvers only use the seed in the embedding step, and
            // they fail almost always before it; one more try is enough
            if method != Method::NonExtremal && r >= 1 {
                break;
            }
        }
        None
    }

    /// Even order: classify, then walk the fallback chain.
    fn even(&mut self, g: &Graph, x: usize, y: usize) -> Option<Found> {
        let n = g.n();
        if n <= self.cfg.small_cutoff {
            return self.oracle(g, x, y);
        }
        let report = classify_detailed(g, self.cfg.classify_alpha, self.cfg.classify_effort, self.cfg.seed);
        self.classification = Some((&report).into());
        let dense = (report.max_cut.v1.clone(), report.max_cut.v2.clone());
        let sparse = (report.min_cut.v1.clone(), report.min_cut.v2.clone());
        let chain = match &report.verdict {
            Classification::NonExtremal => [Method::NonExtremal, Method::Ec1, Method::Ec2],
            Classification::Ec1 { .. } => [Method::Ec1, Method::Ec2, Method::NonExtremal],
            Classification::Ec2 { .. } => [Method::Ec2, Method::Ec1, Method::NonExtremal],
        };
        for m in chain {
            let split = if m == Method::Ec2 { &sparse } else { &dense };
            if let Some(f) = self.constructive(g, x, y, m, split) {
                return Some(f);
            }
        }
        if n <= self.cfg.oracle_max {
            return self.oracle(g, x, y);
        }
        None
    }
}

/// Solves one instance. Contract violations are errors; solver failures
/// produce a report with `success = false` and no certificate.
pub fn dispatch(g: &Graph, x: usize, y: usize, cfg: &DispatchConfig) -> Result<SolveReport, DispatchError> {
    let start = Instant::now();
    let n = g.n();
    if n < 3 {
        return Err(DispatchError::TooSmall(n));
    }
    if x == y || x >= n || y >= n {
        return Err(DispatchError::BadPair { n });
    }
    let min_degree = g.min_degree();
    if 2 * min_degree < n + 2 {
        return Err(DispatchError::DegreeTooLow { n, min_degree });
    }

    let mut run = Run { cfg, attempts: vec![], classification: None };
    let mut odd_removed = None;
    let mut failure = None;
    let found = if n.is_multiple_of(2) || n <= cfg.small_cutoff {
        run.even(g, x, y)
    } else {
        let red = reduce_odd(g, x, y).expect("odd n ≥ 5 with a valid pair");
        odd_removed = Some(red.v);
        match run.even(&red.graph, red.x, red.y) {
            Some(f) => match red.reinsert(g, &f.order) {
                Ok(order) => Some(Found { order, ..f }),
                Err(e) => {
                    failure = Some(format!("reinsertion: {e}"));
                    if n <= cfg.oracle_max {
                        run.oracle(g, x, y)
                    } else {
                        None
                    }
                }
            },
            None => None,
        }
    };

    let target = n / 2;
    let mut report = SolveReport {
        n,
        x,
        y,
        target,
        seed: cfg.seed,
        success: false,
        method: None,
        certificate: None,
        verified: false,
        verdict: None,
        classification: run.classification,
        odd_removed,
        stages: vec![],
        notes: serde_json::Value::Null,
        attempts: run.attempts,
        failure: None,
        total_ms: 0.0,
    };
    match found {
        Some(f) => {
            let verdict = match CycleCertificate::from_order(f.order.clone(), x, y) {
                Ok(c) => verify_certificate(g, &c, target),
                Err(_) => Verdict::Reject(crate::certificate::Rejection::BadPair),
            };
            report.method = Some(f.method);
            report.stages = f.stages;
            report.notes = f.notes;
            if verdict.is_accept() {
                report.success = true;
                report.verified = true;
                report.certificate = Some(f.order);
            } else {
                report.failure = Some(format!("{} produced a cycle the checker rejected", f.method.name()));
            }
            report.verdict = Some(verdict);
        }
        None => {
            report.failure = Some(failure.unwrap_or_else(|| "all solvers failed".into()));
        }
    }
    report.total_ms = ms(start.elapsed());
    Ok(report)
}

/// Census route backed by [`dispatch`]. A failed solve is recorded as
/// `Exhausted`, never as `Absent`: the solvers cannot prove non-existence.
pub fn dispatch_route(cfg: DispatchConfig) -> impl Fn(&Graph, usize, usize, usize) -> PairResult + Sync {
    move |g, x, y, d| {
        assert_eq!(d, g.n() / 2, "dispatch only targets ⌊n/2⌋");
        match dispatch(g, x, y, &cfg) {
            Ok(r) if r.success => PairResult { outcome: PairOutcome::Found, order: r.certificate, nodes: 0 },
            _ => PairResult { outcome: PairOutcome::Exhausted, order: None, nodes: 0 },
        }
    }
}
