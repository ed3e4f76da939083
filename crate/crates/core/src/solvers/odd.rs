//! Odd orders: delete one vertex, solve the even graph, splice it back.

use thiserror::Error;

use crate::certificate::cycle_distance;
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OddError {
    #[error("reduction needs odd n ≥ 5 and distinct x, y; got n = {n}")]
    BadInput { n: usize },
    #[error("removed vertex {0} has no two consecutive neighbours on the cycle")]
    NoSplice(usize),
    #[error("reduced cycle is not a cycle of the reduced graph")]
    BadCycle,
}

#[derive(Debug, Clone)]
pub struct OddReduction {
    /// The removed vertex, in original labels.
    pub v: usize,
    /// `G − v`, relabelled so that original `u` becomes `u` or `u − 1`.
    pub graph: Graph,
    pub x: usize,
    pub y: usize,
    /// Original label of each reduced vertex.
    pub back: Vec<usize>,
}

/// Removes the lowest-labelled vertex other than `x` and `y`.
pub fn reduce_odd(g: &Graph, x: usize, y: usize) -> Result<OddReduction, OddError> {
    let n = g.n();
    if n.is_multiple_of(2) || n < 5 || x == y || x >= n || y >= n {
        return Err(OddError::BadInput { n });
    }
    let v = (0..n).find(|&v| v != x && v != y).expect("n ≥ 5");
    let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    let (graph, back) = g.induced(&keep);
    let fwd = |u: usize| if u > v { u - 1 } else { u };
    Ok(OddReduction { v, graph, x: fwd(x), y: fwd(y), back })
}

impl OddReduction {
    /// Maps a Hamiltonian cycle of `G − v` placing x, y at distance
    /// `(n−1)/2` to one of `G` placing them at `⌊n/2⌋`, splicing `v` between
    /// the first consecutive pair of its neighbours (by cycle index) that
    /// keeps the distance.
    pub fn reinsert(&self, g: &Graph, reduced: &[usize]) -> Result<Vec<usize>, OddError> {
        let m = reduced.len();
        if m != self.graph.n() || m < 3 {
            return Err(OddError::BadCycle);
        }
        let order: Vec<usize> = reduced.iter().map(|&u| self.back[u]).collect();
        let (x, y) = (self.back[self.x], self.back[self.y]);
        let target = g.n() / 2;
        for i in 0..m {
            let (a, b) = (order[i], order[(i + 1) % m]);
            if !g.has_edge(a, b) {
                return Err(OddError::BadCycle);
            }
            if g.has_edge(a, self.v) && g.has_edge(self.v, b) {
                let mut c = order.clone();
                c.insert(i + 1, self.v);
                if cycle_distance(&c, x, y) == Ok(target) {
                    return Ok(c);
                }
            }
        }
        Err(OddError::NoSplice(self.v))
    }
}
