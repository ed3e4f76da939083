//! Constructive solvers, the extremal classifier, the odd-order reduction
//! and the dispatcher that routes between them.

pub mod classify;
pub mod dense;
pub mod dispatch;
pub mod ec1;
pub mod ec2;
mod frame;
pub mod nonextremal;
pub mod odd;

use std::fmt::Display;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classify::{classify, classify_detailed, Classification, ClassifyReport};
pub use dense::{absorbing_path, hamiltonian_path_dense, DenseError, TwoPath};
pub use dispatch::{dispatch, dispatch_route, DispatchConfig, DispatchError, Method, SolveReport};
pub use ec1::{ec1_scaffold, solve_ec1, Ec1Case, Ec1Scaffold};
pub use ec2::{ec2_scaffold, solve_ec2, Ec2Case, Ec2Scaffold};
pub use nonextremal::{solve_nonextremal, ConnectorPlan, LengthPlan};
pub use odd::{reduce_odd, OddError, OddReduction};

/// A constructive solver gave up; `stage` names where.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[error("{solver} failed at {stage}: {detail}")]
pub struct SolverError {
    pub solver: String,
    pub stage: String,
    pub detail: String,
}

impl SolverError {
    pub(crate) fn new(solver: &str, stage: &str, detail: impl Display) -> Self {
        SolverError { solver: solver.into(), stage: stage.into(), detail: detail.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub ms: f64,
}

/// A Hamiltonian cycle from a constructive solver, with per-stage timings
/// and solver-specific notes for the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Construction {
    pub order: Vec<usize>,
    pub stages: Vec<StageTiming>,
    pub notes: serde_json::Value,
}

pub(crate) struct Stages {
    last: Instant,
    list: Vec<StageTiming>,
}

impl Stages {
    pub fn start() -> Self {
        Stages { last: Instant::now(), list: vec![] }
    }

    /// Closes the current stage.
    pub fn mark(&mut self, stage: &str) {
        let now = Instant::now();
        self.list.push(StageTiming { stage: stage.into(), ms: (now - self.last).as_secs_f64() * 1e3 });
        self.last = now;
    }

    pub fn finish(self) -> Vec<StageTiming> {
        self.list
    }
}
