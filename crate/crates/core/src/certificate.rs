//! Hamiltonian-cycle certificates and the independent checker.
//!
//! Nothing here depends on solver bookkeeping: a certificate is just a vertex
//! order plus the pair it claims to separate, and [`verify_certificate`]
//! re-derives everything from the graph.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistanceError {
    #[error("x and y coincide")]
    SameVertex,
    #[error("vertex {0} is not on the cycle")]
    Absent(usize),
}

/// Edge count of the shorter arc between `x` and `y` on the cyclic `order`.
pub fn cycle_distance(order: &[usize], x: usize, y: usize) -> Result<usize, DistanceError> {
    if x == y {
        return Err(DistanceError::SameVertex);
    }
    let px = order.iter().position(|&v| v == x).ok_or(DistanceError::Absent(x))?;
    let py = order.iter().position(|&v| v == y).ok_or(DistanceError::Absent(y))?;
    let gap = px.abs_diff(py);
    Ok(gap.min(order.len() - gap))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCertificate {
    pub order: Vec<usize>,
    pub x: usize,
    pub y: usize,
    pub claimed_distance: usize,
}

impl CycleCertificate {
    /// Builds a certificate whose claimed distance is read off `order`.
    pub fn from_order(order: Vec<usize>, x: usize, y: usize) -> Result<Self, DistanceError> {
        let claimed_distance = cycle_distance(&order, x, y)?;
        Ok(CycleCertificate { order, x, y, claimed_distance })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    #[error("order has {got} vertices, graph has {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("vertex {vertex} out of range")]
    OutOfRange { vertex: usize },
    #[error("vertex {vertex} repeated")]
    Repeated { vertex: usize },
    #[error("not an edge: {u}-{v}")]
    NotAnEdge { u: usize, v: usize },
    #[error("pair vertex missing or x = y")]
    BadPair,
    #[error("distance mismatch: cycle gives {actual}, target {target}, claimed {claimed}")]
    DistanceMismatch { actual: usize, target: usize, claimed: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Accept,
    Reject(Rejection),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// Accepts iff `c.order` is a Hamiltonian cycle of `g` and puts `c.x`, `c.y`
/// at cycle distance `target` (which must also equal the claimed distance).
pub fn verify_certificate(g: &Graph, c: &CycleCertificate, target: usize) -> Verdict {
    let n = g.n();
    if c.order.len() != n {
        return Verdict::Reject(Rejection::WrongLength { expected: n, got: c.order.len() });
    }
    let mut seen = vec![false; n];
    for &v in &c.order {
        if v >= n {
            return Verdict::Reject(Rejection::OutOfRange { vertex: v });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Verdict::Reject(Rejection::Repeated { vertex: v });
        }
    }
    for i in 0..n {
        let (u, v) = (c.order[i], c.order[(i + 1) % n]);
        if !g.has_edge(u, v) {
            return Verdict::Reject(Rejection::NotAnEdge { u, v });
        }
    }
    let Ok(actual) = cycle_distance(&c.order, c.x, c.y) else {
        return Verdict::Reject(Rejection::BadPair);
    };
    if actual != target || c.claimed_distance != actual {
        return Verdict::Reject(Rejection::DistanceMismatch {
            actual,
            target,
            claimed: c.claimed_distance,
        });
    }
    Verdict::Accept
}
