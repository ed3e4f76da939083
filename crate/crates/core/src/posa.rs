//! Rotation–extension search for long paths and Hamiltonian cycles.
//!
//! A path grows from a pinned start vertex. When the free end has no unused
//! neighbour, a rotation picks a neighbour `p[i]` of the end and reverses the
//! tail after it, so `p[i+1]` becomes the new end. The same rotation is used
//! to steer the end next to the required final vertex.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosaBudget {
    pub restarts: usize,
    /// Extension plus rotation steps per restart, as a multiple of the target length.
    pub steps_per_vertex: usize,
}

impl Default for PosaBudget {
    fn default() -> Self {
        PosaBudget { restarts: 50, steps_per_vertex: 20 }
    }
}

#[derive(Clone, Copy)]
enum Goal {
    /// The path must finish at this vertex.
    End(usize),
    /// The path's end must be adjacent to its start.
    Close,
}

struct Walker<'a> {
    g: &'a Graph,
    path: Vec<usize>,
    pos: Vec<usize>,
    on_path: VertexSet,
    free: VertexSet,
}

impl Walker<'_> {
    fn push(&mut self, v: usize) {
        self.pos[v] = self.path.len();
        self.path.push(v);
        self.on_path.insert(v);
        self.free.remove(v);
    }

    fn rotate(&mut self, i: usize) {
        self.path[i + 1..].reverse();
        for j in i + 1..self.path.len() {
            self.pos[self.path[j]] = j;
        }
    }

    /// Positions `i` with `p[i] ~ end` and `p[i+1]` not already the end.
    fn pivots(&self) -> Vec<usize> {
        let last = *self.path.last().expect("path is never empty");
        let len = self.path.len();
        self.g
            .neighbor_set(last)
            .intersection(&self.on_path)
            .iter()
            .map(|u| self.pos[u])
            .filter(|&i| i + 2 < len)
            .collect()
    }
}

fn attempt<R: Rng>(
    g: &Graph,
    allowed: &VertexSet,
    s: usize,
    goal: Goal,
    len: usize,
    rng: &mut R,
    max_steps: usize,
) -> Option<Vec<usize>> {
    let n = g.n();
    let mut free = allowed.clone();
    if let Goal::End(t) = goal {
        free.remove(t);
    }
    let mut w = Walker { g, path: Vec::with_capacity(len), pos: vec![usize::MAX; n], on_path: VertexSet::empty(n), free };
    w.push(s);
    // vertices to lay down before the goal condition is tested
    let body = match goal {
        Goal::End(_) => len - 1,
        Goal::Close => len,
    };
    for _ in 0..max_steps {
        let last = *w.path.last().unwrap();
        if w.path.len() == body {
            let hits = |v: usize| match goal {
                Goal::End(t) => g.has_edge(v, t),
                Goal::Close => g.has_edge(v, s),
            };
            if hits(last) {
                let mut p = std::mem::take(&mut w.path);
                if let Goal::End(t) = goal {
                    p.push(t);
                }
                return Some(p);
            }
            let piv = w.pivots();
            if piv.is_empty() {
                return None;
            }
            let good: Vec<usize> = piv.iter().copied().filter(|&i| hits(w.path[i + 1])).collect();
            let i = *good.choose(rng).unwrap_or_else(|| piv.choose(rng).unwrap());
            w.rotate(i);
            continue;
        }
        let cand = g.neighbor_set(last).intersection(&w.free);
        if !cand.is_empty() {
            // fewest onward options first, random among ties
            let mut best = vec![];
            let mut best_deg = usize::MAX;
            for v in cand.iter() {
                let dv = g.deg_in(v, &w.free);
                if dv < best_deg {
                    best_deg = dv;
                    best.clear();
                }
                if dv == best_deg {
                    best.push(v);
                }
            }
            let v = *best.choose(rng).unwrap();
            w.push(v);
            continue;
        }
        let piv = w.pivots();
        if piv.is_empty() {
            return None;
        }
        let good: Vec<usize> = piv.iter().copied().filter(|&i| g.deg_in(w.path[i + 1], &w.free) > 0).collect();
        let i = *good.choose(rng).unwrap_or_else(|| piv.choose(rng).unwrap());
        w.rotate(i);
    }
    None
}

/// A path from `s` to `t` with exactly `len` vertices, all inside `allowed`.
pub fn path_with_length<R: Rng>(
    g: &Graph,
    allowed: &VertexSet,
    s: usize,
    t: usize,
    len: usize,
    rng: &mut R,
    budget: PosaBudget,
) -> Option<Vec<usize>> {
    if s == t || len < 2 || !allowed.contains(s) || !allowed.contains(t) || len > allowed.len() {
        return None;
    }
    if len == 2 {
        return g.has_edge(s, t).then(|| vec![s, t]);
    }
    let steps = budget.steps_per_vertex * len.max(8);
    (0..budget.restarts.max(1)).find_map(|_| attempt(g, allowed, s, Goal::End(t), len, rng, steps))
}

/// A Hamiltonian path of `G[allowed]` from `s` to `t`.
pub fn hamiltonian_path<R: Rng>(
    g: &Graph,
    allowed: &VertexSet,
    s: usize,
    t: usize,
    rng: &mut R,
    budget: PosaBudget,
) -> Option<Vec<usize>> {
    path_with_length(g, allowed, s, t, allowed.len(), rng, budget)
}

/// A Hamiltonian cycle of `g` as a cyclic vertex order.
pub fn hamiltonian_cycle<R: Rng>(g: &Graph, rng: &mut R, budget: PosaBudget) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let all = VertexSet::full(n);
    let steps = budget.steps_per_vertex * n.max(8);
    (0..budget.restarts.max(1)).find_map(|_| {
        let s = rng.gen_range(0..n);
        attempt(g, &all, s, Goal::Close, n, rng, steps)
    })
}

/// True when `p` is a path of `g` (consecutive vertices adjacent, no repeats).
pub fn is_path(g: &Graph, p: &[usize]) -> bool {
    let mut seen = VertexSet::empty(g.n());
    for (i, &v) in p.iter().enumerate() {
        if v >= g.n() || seen.contains(v) {
            return false;
        }
        seen.insert(v);
        if i > 0 && !g.has_edge(p[i - 1], v) {
            return false;
        }
    }
    true
}
