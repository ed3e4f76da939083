//! Hamiltonian paths in dense induced subgraphs, optionally threading a
//! list of reserved 2-paths whose middle vertices have low degree.

use rand::Rng;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::posa::{hamiltonian_path, is_path, PosaBudget};
use crate::seeds;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DenseError {
    #[error("endpoints {0} and {1} must be distinct members of the vertex set")]
    BadEndpoints(usize, usize),
    #[error("no Hamiltonian path found within budget")]
    Exhausted,
    #[error("no free connector for reserved 2-path through {0}")]
    NoConnector(usize),
}

/// A reserved path `a – w – b` whose middle `w` may only be reachable
/// through `a` and `b`.
pub type TwoPath = (usize, usize, usize);

/// Hamiltonian path of `G[allowed]` from `u` to `v` by rotation–extension.
pub fn hamiltonian_path_dense(g: &Graph, allowed: &VertexSet, u: usize, v: usize, seed: u64) -> Result<Vec<usize>, DenseError> {
    if u == v || !allowed.contains(u) || !allowed.contains(v) {
        return Err(DenseError::BadEndpoints(u, v));
    }
    if allowed.len() == 2 {
        return if g.has_edge(u, v) { Ok(vec![u, v]) } else { Err(DenseError::Exhausted) };
    }
    let mut rng = seeds::rng_for(seed, "dense-path", (u * g.n() + v) as u64);
    let budget = PosaBudget { restarts: 30, steps_per_vertex: 30 };
    let p = hamiltonian_path(g, allowed, u, v, &mut rng, budget).ok_or(DenseError::Exhausted)?;
    debug_assert!(is_path(g, &p) && p.len() == allowed.len());
    Ok(p)
}

/// Lowest admissible common neighbour of `a` and `b` inside `pool`.
pub(crate) fn common_in(g: &Graph, a: usize, b: usize, pool: &VertexSet) -> Option<usize> {
    g.common_neighbors(a, b).intersection(pool).first()
}

/// Hamiltonian path of `G[set]` from `s` to `t` that threads every 2-path
/// lying inside `set` and avoiding `s` and `t`: the 2-paths are strung into
/// one path through common neighbours and the remainder is covered by a
/// dense Hamiltonian path.
pub fn absorbing_path(
    g: &Graph,
    set: &VertexSet,
    s: usize,
    t: usize,
    two_paths: &[TwoPath],
    seed: u64,
) -> Result<Vec<usize>, DenseError> {
    if s == t || !set.contains(s) || !set.contains(t) {
        return Err(DenseError::BadEndpoints(s, t));
    }
    let live: Vec<TwoPath> = two_paths
        .iter()
        .copied()
        .filter(|&(a, w, b)| [a, w, b].iter().all(|&z| set.contains(z) && z != s && z != t))
        .collect();
    if live.is_empty() {
        return hamiltonian_path_dense(g, set, s, t, seed);
    }
    let mut rng = seeds::rng_for(seed, "absorb", live.len() as u64);
    let reserved = VertexSet::from_iter(g.n(), live.iter().flat_map(|&(a, w, b)| [a, w, b]));
    let mut free = set.difference(&reserved);
    free.remove(s);
    free.remove(t);
    let take = |free: &mut VertexSet, c: Option<usize>, at: usize| -> Result<usize, DenseError> {
        let c = c.ok_or(DenseError::NoConnector(at))?;
        free.remove(c);
        Ok(c)
    };
    let nb = |v: usize, free: &VertexSet| g.neighbor_set(v).intersection(free).first();
    // t is reached through a free neighbour so it may have low degree
    let found = nb(t, &free);
    let tv = take(&mut free, found, t)?;
    let mut chain = vec![];
    for (i, &(a, w, b)) in live.iter().enumerate() {
        if i > 0 {
            let prev = *chain.last().unwrap();
            let found = common_in(g, prev, a, &free);
            let c = take(&mut free, found, a)?;
            chain.push(c);
        }
        chain.extend([a, w, b]);
    }
    let last = *chain.last().unwrap();
    let found = common_in(g, last, tv, &free);
    let c = take(&mut free, found, last)?;
    chain.push(c);
    chain.push(tv);
    chain.push(t);
    // cover s, the free vertices and the chain head with a dense path
    let head = chain[0];
    let mut rest = free.clone();
    rest.insert(head);
    rest.insert(s);
    let mut front = hamiltonian_path_dense(g, &rest, s, head, rng.gen())?;
    front.pop();
    front.extend(chain);
    debug_assert!(is_path(g, &front) && front.len() == set.len());
    Ok(front)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complete_graph_paths() {
        let g = Graph::complete(9);
        let all = VertexSet::full(9);
        let p = hamiltonian_path_dense(&g, &all, 3, 7, 1).unwrap();
        assert_eq!((p[0], p[8], p.len()), (3, 7, 9));
        assert!(is_path(&g, &p));
        assert!(matches!(hamiltonian_path_dense(&g, &all, 3, 3, 1), Err(DenseError::BadEndpoints(..))));
    }

    #[test]
    fn complete_minus_matching() {
        let m = 50;
        let mut b = Graph::complete(m).to_builder();
        for i in (0..m).step_by(2) {
            b.remove_edge(i, i + 1);
        }
        let g = b.build();
        let all = VertexSet::full(m);
        for (u, v) in [(0, 1), (0, 49), (17, 33)] {
            let p = hamiltonian_path_dense(&g, &all, u, v, 5).unwrap();
            assert_eq!((p[0], p[m - 1], p.len()), (u, v, m));
            assert!(is_path(&g, &p));
        }
    }

    #[test]
    fn dense_random_over_seeds() {
        let mut ok = 0;
        for seed in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 100;
            let mut b = GraphBuilder::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.9) {
                        b.add_edge(u, v);
                    }
                }
            }
            let g = b.build();
            if g.min_degree() < 61 {
                continue;
            }
            let p = hamiltonian_path_dense(&g, &VertexSet::full(n), 0, 99, seed).unwrap();
            assert!(is_path(&g, &p) && p.len() == n);
            ok += 1;
        }
        assert!(ok > 90);
    }

    #[test]
    fn threads_low_degree_middles() {
        // a clique on 0..30 plus pendant-ish vertices 30..33, each adjacent to
        // exactly two clique vertices
        let mut b = GraphBuilder::new(33);
        for (u, v) in Graph::complete(30).edges() {
            b.add_edge(u, v);
        }
        let tp = [(0, 30, 1), (2, 31, 3), (4, 32, 5)];
        for &(a, w, c) in &tp {
            b.add_edge(a, w);
            b.add_edge(w, c);
        }
        let g = b.build();
        let all = VertexSet::full(33);
        let p = absorbing_path(&g, &all, 10, 20, &tp, 3).unwrap();
        assert_eq!((p[0], p[32], p.len()), (10, 20, 33));
        assert!(is_path(&g, &p));
    }
}
