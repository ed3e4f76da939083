//! Exhaustive backtracking for a Hamiltonian cycle with a prescribed x–y distance.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::CycleCertificate;
use crate::graph::Graph;

/// Largest order the bitmask search accepts.
pub const ORACLE_MAX_N: usize = 64;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub node_limit: Option<u64>,
    #[serde(with = "opt_duration_ms")]
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(limit: u64) -> Self {
        SearchBudget { node_limit: Some(limit), time_limit: None }
    }
}

mod opt_duration_ms {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        d.map(|d| d.as_millis() as u64).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        Ok(Option::<u64>::deserialize(d)?.map(Duration::from_millis))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("target distance {d} outside 1..={max}")]
    DistanceOutOfRange { d: usize, max: usize },
    #[error("x and y must be distinct vertices of the graph")]
    BadPair,
    #[error("graph order {0} exceeds the oracle limit")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found(CycleCertificate),
    Absent,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub nodes: u64,
    pub elapsed: Duration,
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    x: usize,
    y: usize,
    d: usize,
    all: u64,
    path: Vec<usize>,
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
    out_of_budget: bool,
}

impl Search<'_> {
    fn y_slot(&self, pos: usize) -> bool {
        pos == self.d || pos == self.n - self.d
    }

    fn over_budget(&mut self) -> bool {
        if self.out_of_budget {
            return true;
        }
        if let Some(limit) = self.budget.node_limit {
            if self.nodes >= limit {
                self.out_of_budget = true;
            }
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(t) = self.budget.time_limit {
                if self.start.elapsed() >= t {
                    self.out_of_budget = true;
                }
            }
        }
        self.out_of_budget
    }

    /// Every unvisited vertex needs two usable neighbours, x needs one, and the
    /// unvisited set must hang together through `last`.
    fn feasible(&self, last: usize, unvisited: u64) -> bool {
        if unvisited == 0 {
            return true;
        }
        let pool = unvisited | (1 << last) | (1 << self.x);
        if self.adj[self.x] & unvisited == 0 || self.adj[last] & unvisited == 0 {
            return false;
        }
        let mut rest = unvisited;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.adj[w] & pool).count_ones() < 2 {
                return false;
            }
        }
        // connectivity of unvisited ∪ {last}
        let target = unvisited | (1 << last);
        let mut reach = 1u64 << last;
        let mut frontier = reach;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let w = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[w] & target;
            }
            frontier = next & !reach;
            reach |= next;
        }
        reach == target
    }

    fn dfs(&mut self, last: usize, visited: u64) -> bool {
        self.nodes += 1;
        if self.over_budget() {
            return false;
        }
        let pos = self.path.len();
        if pos == self.n {
            return self.adj[last] >> self.x & 1 == 1;
        }
        let unvisited = self.all & !visited;
        if !self.feasible(last, unvisited) {
            return false;
        }
        let y_placed = visited >> self.y & 1 == 1;
        let mut cand = self.adj[last] & unvisited;
        if self.y_slot(pos) && !y_placed {
            cand &= 1 << self.y;
        } else {
            cand &= !(1u64 << self.y);
        }
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.path.push(v);
            if self.dfs(v, visited | 1 << v) {
                return true;
            }
            self.path.pop();
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

/// Searches for a Hamiltonian cycle `C` with `dist_C(x, y) = d`.
///
/// `x` is pinned to position 0, so `y` can only sit at position `d` or `n - d`;
/// neighbours are tried in ascending id order.
pub fn find_cycle_with_distance(
    g: &Graph,
    x: usize,
    y: usize,
    d: usize,
    budget: SearchBudget,
) -> Result<SearchResult, OracleError> {
    let n = g.n();
    if n > ORACLE_MAX_N {
        return Err(OracleError::TooLarge(n));
    }
    if x == y || x >= n || y >= n {
        return Err(OracleError::BadPair);
    }
    if d == 0 || d > n / 2 {
        return Err(OracleError::DistanceOutOfRange { d, max: n / 2 });
    }
    let adj: Vec<u64> = (0..n).map(|v| g.row(v)[0]).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = Search {
        adj: &adj,
        n,
        x,
        y,
        d,
        all,
        path: Vec::with_capacity(n),
        nodes: 0,
        budget,
        start: Instant::now(),
        out_of_budget: false,
    };
    s.path.push(x);
    let found = n >= 3 && s.dfs(x, 1 << x);
    let outcome = if found {
        let order = std::mem::take(&mut s.path);
        Outcome::Found(CycleCertificate { order, x, y, claimed_distance: d })
    } else if s.out_of_budget {
        Outcome::Exhausted
    } else {
        Outcome::Absent
    };
    Ok(SearchResult { outcome, nodes: s.nodes, elapsed: s.start.elapsed() })
}
