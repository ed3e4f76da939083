//! The reduced graph on clusters, its non-extremality checks, and its
//! Hamiltonian cycle.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::partition::RegularityPartition;
use super::Params;
use crate::graph::{Graph, GraphBuilder};
use crate::posa::{hamiltonian_cycle, PosaBudget};
use crate::seeds;

/// Orders up to which both non-extremality conditions are decided exactly.
pub const EXACT_MAX_L: usize = 24;

#[derive(Debug, Clone)]
pub struct ReducedGraph {
    pub graph: Graph,
    /// Cluster index of each vertex of the host graph (`None` for V₀).
    pub cluster_of: Vec<Option<usize>>,
}

impl ReducedGraph {
    pub fn l(&self) -> usize {
        self.graph.n()
    }

    pub fn min_degree(&self) -> usize {
        self.graph.min_degree()
    }

    /// `(1/2 − 2d)·l`, the minimum degree the reduced graph inherits.
    pub fn degree_bound(&self, d: f64) -> f64 {
        (0.5 - 2.0 * d) * self.l() as f64
    }

    pub fn meets_degree_bound(&self, d: f64) -> bool {
        self.min_degree() as f64 >= self.degree_bound(d)
    }
}

pub fn reduced_graph(part: &RegularityPartition, params: &Params) -> ReducedGraph {
    let mut b = GraphBuilder::new(part.l());
    for p in &part.pairs {
        if p.regular && p.density.exceeds(params.d) {
            b.add_edge(p.i, p.j);
        }
    }
    ReducedGraph { graph: b.build(), cluster_of: part.cluster_of.clone() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionStatus {
    Pass,
    Fail,
    /// The size bound is at most 1, so the condition cannot hold for any
    /// graph and carries no information.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonExtremalCheck {
    pub exact: bool,
    pub independence_bound: f64,
    pub largest_independent: Vec<usize>,
    pub independence: ConditionStatus,
    pub cut_bound: f64,
    /// Disjoint sets of the required size with no edge between them.
    pub empty_cut: Option<(Vec<usize>, Vec<usize>)>,
    pub cut: ConditionStatus,
}

impl NonExtremalCheck {
    pub fn passed(&self) -> bool {
        self.independence != ConditionStatus::Fail && self.cut != ConditionStatus::Fail
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.row(v)[0]).collect()
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = vec![];
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

fn max_independent_exact(adj: &[u64], cand: u64, cur: u64, best: &mut u64) {
    if cand == 0 {
        if cur.count_ones() > best.count_ones() {
            *best = cur;
        }
        return;
    }
    if cur.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    max_independent_exact(adj, cand & !adj[v] & !(1 << v), cur | 1 << v, best);
    max_independent_exact(adj, cand & !(1 << v), cur, best);
}

fn max_independent_greedy<R: Rng>(adj: &[u64], l: usize, rng: &mut R, rounds: usize) -> u64 {
    let all = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
    let mut best = 0u64;
    for _ in 0..rounds {
        let mut cand = all;
        let mut cur = 0u64;
        while cand != 0 {
            let vs = bits(cand);
            let min = vs.iter().map(|&v| (adj[v] & cand).count_ones()).min().unwrap();
            let ties: Vec<usize> = vs.into_iter().filter(|&v| (adj[v] & cand).count_ones() == min).collect();
            let v = *ties.choose(rng).unwrap();
            cur |= 1 << v;
            cand &= !adj[v] & !(1 << v);
        }
        if cur.count_ones() > best.count_ones() {
            best = cur;
        }
    }
    best
}

/// Closed neighbourhood of a set.
fn closed(adj: &[u64], set: u64) -> u64 {
    bits(set).iter().fold(set, |acc, &v| acc | adj[v])
}

fn empty_cut_exact(adj: &[u64], l: usize, s: usize) -> Option<(u64, u64)> {
    if s == 0 || 2 * s > l {
        return None;
    }
    let all = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
    // Gosper's hack over all s-subsets
    let mut set: u64 = (1u64 << s) - 1;
    while set & !all == 0 {
        let outside = all & !closed(adj, set);
        if outside.count_ones() as usize >= s {
            return Some((set, outside));
        }
        let c = set & set.wrapping_neg();
        let r = set + c;
        set = (((r ^ set) >> 2) / c) | r;
    }
    None
}

fn empty_cut_greedy<R: Rng>(adj: &[u64], l: usize, s: usize, rng: &mut R, rounds: usize) -> Option<(u64, u64)> {
    if s == 0 || 2 * s > l {
        return None;
    }
    let all = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
    for _ in 0..rounds {
        let mut set = 1u64 << rng.gen_range(0..l);
        while (set.count_ones() as usize) < s {
            let pool = all & !set;
            let choice = bits(pool).into_iter().min_by_key(|&v| (closed(adj, set | 1 << v).count_ones(), rng.gen::<u32>()));
            set |= 1 << choice.expect("s ≤ l/2 leaves candidates");
        }
        let outside = all & !closed(adj, set);
        if outside.count_ones() as usize >= s {
            return Some((set, outside));
        }
    }
    None
}

/// Checks that the independence number of R is below `(1/2 − 8d)·l` and that
/// no two disjoint sets of size at least `(1/2 − 6d)·l` span no edge.
/// Exact for `l ≤ 24`, randomised greedy beyond.
pub fn check_nonextremal_reduced(r: &ReducedGraph, params: &Params, seed: u64) -> NonExtremalCheck {
    let l = r.l();
    assert!(l <= 64, "reduced graph limited to 64 clusters");
    let adj = masks(&r.graph);
    let exact = l <= EXACT_MAX_L;
    let mut rng = seeds::rng_for(seed, "nonextremal", l as u64);
    let all = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };

    let independence_bound = (0.5 - 8.0 * params.d) * l as f64;
    let mis = if exact {
        let mut best = 0;
        max_independent_exact(&adj, all, 0, &mut best);
        best
    } else {
        max_independent_greedy(&adj, l, &mut rng, 200)
    };
    let independence = if independence_bound <= 1.0 {
        ConditionStatus::Vacuous
    } else if (mis.count_ones() as f64) < independence_bound {
        ConditionStatus::Pass
    } else {
        ConditionStatus::Fail
    };

    let cut_bound = (0.5 - 6.0 * params.d) * l as f64;
    let (cut, empty_cut) = if cut_bound <= 1.0 {
        (ConditionStatus::Vacuous, None)
    } else {
        let s = cut_bound.ceil() as usize;
        let found = if exact { empty_cut_exact(&adj, l, s) } else { empty_cut_greedy(&adj, l, s, &mut rng, 200) };
        match found {
            Some((a, b)) => (ConditionStatus::Fail, Some((bits(a), bits(b)))),
            None => (ConditionStatus::Pass, None),
        }
    };
    NonExtremalCheck {
        exact,
        independence_bound,
        largest_independent: bits(mis),
        independence,
        cut_bound,
        empty_cut,
        cut,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReducedError {
    #[error("no Hamiltonian cycle of the reduced graph found within budget")]
    NoCycle,
}

/// A Hamiltonian cycle of R by rotation–extension with restarts.
pub fn hamiltonian_cycle_reduced(r: &ReducedGraph, seed: u64) -> Result<Vec<usize>, ReducedError> {
    let g = &r.graph;
    if g.n() == 2 && g.has_edge(0, 1) {
        return Ok(vec![0, 1]);
    }
    let mut rng = seeds::rng_for(seed, "reduced-cycle", g.n() as u64);
    hamiltonian_cycle(g, &mut rng, PosaBudget { restarts: 200, steps_per_vertex: 50 }).ok_or(ReducedError::NoCycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reduced(g: Graph) -> ReducedGraph {
        ReducedGraph { cluster_of: vec![], graph: g }
    }

    fn kmm(m: usize) -> Graph {
        let mut b = GraphBuilder::new(2 * m);
        for i in 0..m {
            for j in m..2 * m {
                b.add_edge(i, j);
            }
        }
        b.build()
    }

    #[test]
    fn complete_reduced_graph_passes() {
        let r = reduced(Graph::complete(16));
        let p = Params { eps: 0.01, d: 0.02, ..Params::default() };
        let c = check_nonextremal_reduced(&r, &p, 0);
        assert!(c.exact && c.passed());
        assert_eq!(c.largest_independent.len(), 1);
    }

    #[test]
    fn balanced_complete_bipartite_fails() {
        let r = reduced(kmm(8));
        let p = Params { eps: 0.01, d: 0.02, ..Params::default() };
        let c = check_nonextremal_reduced(&r, &p, 0);
        assert_eq!(c.independence, ConditionStatus::Fail);
        assert_eq!(c.largest_independent.len(), 8);
        // the cut condition needs two 7-sets with no edge between them; inside
        // one side of K_{8,8} there is no room for both
        assert_eq!(c.cut, ConditionStatus::Pass);
    }

    #[test]
    fn two_cliques_fail_the_cut_condition() {
        let mut b = GraphBuilder::new(16);
        for i in 0..16 {
            for j in i + 1..16 {
                if (i < 8) == (j < 8) {
                    b.add_edge(i, j);
                }
            }
        }
        let p = Params { eps: 0.01, d: 0.02, ..Params::default() };
        let c = check_nonextremal_reduced(&reduced(b.build()), &p, 0);
        assert_eq!(c.cut, ConditionStatus::Fail);
        let (a, bb) = c.empty_cut.unwrap();
        assert!(a.len() >= 7 && bb.len() >= 7);
    }

    #[test]
    fn large_d_is_vacuous() {
        let c = check_nonextremal_reduced(&reduced(kmm(8)), &Params::pipeline(), 0);
        assert_eq!((c.independence, c.cut), (ConditionStatus::Vacuous, ConditionStatus::Vacuous));
        assert!(c.passed());
    }

    #[test]
    fn greedy_mode_on_larger_graphs() {
        let r = reduced(kmm(16));
        let p = Params { eps: 0.01, d: 0.02, ..Params::default() };
        let c = check_nonextremal_reduced(&r, &p, 3);
        assert!(!c.exact);
        assert_eq!(c.independence, ConditionStatus::Fail);
    }

    #[test]
    fn cycles_of_reduced_graphs() {
        let r = reduced(Graph::complete(10));
        let c = hamiltonian_cycle_reduced(&r, 1).unwrap();
        assert_eq!(c.len(), 10);
        let edges: Vec<_> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
        let ring = reduced(Graph::from_edge_list(12, &edges).unwrap());
        let c = hamiltonian_cycle_reduced(&ring, 1).unwrap();
        for i in 0..12 {
            assert!(ring.graph.has_edge(c[i], c[(i + 1) % 12]));
        }
        let star = reduced(Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap());
        assert_eq!(hamiltonian_cycle_reduced(&star, 1), Err(ReducedError::NoCycle));
    }
}
