//! Canonical labelling for small graphs by individualisation–refinement,
//! plus the enumerators the census draws from.
//!
//! The search keeps the lexicographically smallest relabelled adjacency over
//! all leaves of the refinement tree; children in the same orbit of the
//! automorphisms found so far (restricted to those fixing the current prefix)
//! are skipped.

use std::collections::HashSet;

use crate::graph::{Graph, GraphBuilder};

pub const CANON_MAX_N: usize = 64;

type Cells = Vec<Vec<usize>>;

struct Canonizer {
    n: usize,
    adj: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    first: Option<(Vec<u64>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl Canonizer {
    fn refine(&self, mut cells: Cells) -> Cells {
        'outer: loop {
            for s in 0..cells.len() {
                let mut mask = 0u64;
                for &v in &cells[s] {
                    mask |= 1 << v;
                }
                for c in 0..cells.len() {
                    if cells[c].len() < 2 {
                        continue;
                    }
                    let count = |v: usize| (self.adj[v] & mask).count_ones();
                    let k0 = count(cells[c][0]);
                    if cells[c].iter().all(|&v| count(v) == k0) {
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> = cells[c].iter().map(|&v| (count(v), v)).collect();
                    keyed.sort_unstable();
                    let mut parts: Cells = vec![];
                    let mut last = None;
                    for (k, v) in keyed {
                        if last != Some(k) {
                            parts.push(vec![]);
                            last = Some(k);
                        }
                        parts.last_mut().unwrap().push(v);
                    }
                    cells.splice(c..=c, parts);
                    continue 'outer;
                }
            }
            return cells;
        }
    }

    fn code(&self, perm: &[usize]) -> Vec<u64> {
        perm.iter()
            .map(|&u| {
                perm.iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.adj[u] >> v & 1 == 1)
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect()
    }

    fn leaf(&mut self, perm: Vec<usize>) {
        let code = self.code(&perm);
        let aut = |other: &[usize]| {
            let mut g = vec![0; self.n];
            for i in 0..self.n {
                g[perm[i]] = other[i];
            }
            g
        };
        if let Some((fc, fp)) = &self.first {
            if *fc == code {
                let g = aut(fp);
                self.generators.push(g);
                return;
            }
        }
        match &self.best {
            None => {
                self.first = Some((code.clone(), perm.clone()));
                self.best = Some((code, perm));
            }
            Some((bc, bp)) => {
                if *bc == code {
                    let g = aut(bp);
                    self.generators.push(g);
                } else if code < *bc {
                    self.best = Some((code, perm));
                }
            }
        }
    }

    fn orbit_roots(&self, fixed: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut v: usize) -> usize {
            while p[v] != v {
                p[v] = p[p[v]];
                v = p[v];
            }
            v
        }
        for g in &self.generators {
            if fixed.iter().all(|&f| g[f] == f) {
                for v in 0..self.n {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, g[v]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }

    fn search(&mut self, cells: Cells, fixed: &mut Vec<usize>) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(cells.into_iter().map(|c| c[0]).collect());
            return;
        };
        let mut members = cells[target].clone();
        members.sort_unstable();
        let mut explored: Vec<usize> = vec![];
        for &w in &members {
            if !explored.is_empty() {
                let roots = self.orbit_roots(fixed);
                if explored.iter().any(|&e| roots[e] == roots[w]) {
                    continue;
                }
            }
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&v| v != w).collect();
            child.splice(target..=target, [vec![w], rest]);
            fixed.push(w);
            self.search(child, fixed);
            fixed.pop();
            explored.push(w);
        }
    }
}

/// Returns the canonical form of `g` and the labelling `perm` with
/// `canonical.has_edge(i, j) == g.has_edge(perm[i], perm[j])`.
pub fn canonical_form(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.n();
    assert!(n <= CANON_MAX_N, "canonical form limited to {CANON_MAX_N} vertices");
    if n == 0 {
        return (g.clone(), vec![]);
    }
    let mut c = Canonizer {
        n,
        adj: (0..n).map(|v| g.row(v)[0]).collect(),
        best: None,
        first: None,
        generators: vec![],
    };
    c.search(vec![(0..n).collect()], &mut vec![]);
    let (_, perm) = c.best.expect("search reaches at least one leaf");
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(perm[i], perm[j]) {
                b.add_edge(i, j);
            }
        }
    }
    (b.build(), perm)
}

/// All labelled graphs on `n` vertices with maximum degree at most `max_deg`,
/// produced by include/exclude backtracking over the edges in lexicographic order.
pub fn labeled_max_degree(n: usize, max_deg: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = vec![];
    let mut deg = vec![0usize; n];
    let mut chosen: Vec<(usize, usize)> = vec![];
    fn rec(
        i: usize,
        n: usize,
        max_deg: usize,
        pairs: &[(usize, usize)],
        deg: &mut [usize],
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Graph>,
    ) {
        if i == pairs.len() {
            out.push(Graph::from_edge_list(n, chosen).expect("pairs are valid"));
            return;
        }
        rec(i + 1, n, max_deg, pairs, deg, chosen, out);
        let (u, v) = pairs[i];
        if deg[u] < max_deg && deg[v] < max_deg {
            deg[u] += 1;
            deg[v] += 1;
            chosen.push((u, v));
            rec(i + 1, n, max_deg, pairs, deg, chosen, out);
            chosen.pop();
            deg[u] -= 1;
            deg[v] -= 1;
        }
    }
    rec(0, n, max_deg, &pairs, &mut deg, &mut chosen, &mut out);
    out
}

/// Isomorphism-class representatives (in canonical form) of graphs on `n`
/// vertices with maximum degree at most `max_deg`, grown one edge at a time.
pub fn canonical_max_degree(n: usize, max_deg: usize) -> Vec<Graph> {
    use rayon::prelude::*;
    let mut level: Vec<Graph> = vec![canonical_form(&Graph::empty(n)).0];
    let mut all = level.clone();
    while !level.is_empty() {
        let children: Vec<Vec<Graph>> = level
            .par_iter()
            .map(|g| {
                let mut local = vec![];
                for u in 0..n {
                    if g.degree(u) >= max_deg {
                        continue;
                    }
                    for v in u + 1..n {
                        if g.has_edge(u, v) || g.degree(v) >= max_deg {
                            continue;
                        }
                        let mut b = g.to_builder();
                        b.add_edge(u, v);
                        local.push(canonical_form(&b.build()).0);
                    }
                }
                local
            })
            .collect();
        let mut seen: HashSet<Graph> = HashSet::new();
        let mut next = vec![];
        for g in children.into_iter().flatten() {
            if seen.insert(g.clone()) {
                next.push(g);
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edge_list(g.n(), &edges).unwrap()
    }

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..40 {
            let n = 5 + trial % 6;
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rand::Rng::gen_bool(&mut rng, 0.4))
                .collect();
            let g = Graph::from_edge_list(n, &edges).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = relabel(&g, &perm);
            let (cg, pg) = canonical_form(&g);
            assert_eq!(cg, canonical_form(&h).0);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(cg.has_edge(i, j), g.has_edge(pg[i], pg[j]));
                }
            }
        }
    }

    #[test]
    fn highly_symmetric_graphs_terminate() {
        assert_eq!(canonical_form(&Graph::complete(12)).0, Graph::complete(12));
        assert_eq!(canonical_form(&Graph::empty(12)).0, Graph::empty(12));
    }

    #[test]
    fn known_class_counts() {
        // graphs on 4 vertices: 11 classes; on 5 vertices: 34
        assert_eq!(canonical_max_degree(4, 3).len(), 11);
        assert_eq!(canonical_max_degree(5, 4).len(), 34);
        // max degree ≤ 1 on 6 vertices: matchings of size 0..=3
        assert_eq!(canonical_max_degree(6, 1).len(), 4);
    }

    #[test]
    fn labeled_counts() {
        assert_eq!(labeled_max_degree(4, 3).len(), 64);
        // perfect-or-partial matchings on 4 labelled vertices: 1 + 6 + 3
        assert_eq!(labeled_max_degree(4, 1).len(), 10);
    }
}
