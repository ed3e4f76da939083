//! Two spanning paths with prescribed ends and lengths inside a dense
//! bipartite pair, friendliness, and the chains used to absorb V₀.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::posa::{hamiltonian_path, path_with_length, PosaBudget};
use crate::seeds;

/// `deg(v, X) ≥ fraction·|X|`.
pub fn friendly(g: &Graph, v: usize, x: &VertexSet, fraction: f64) -> bool {
    g.deg_in(v, x) as f64 >= fraction * x.len() as f64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPathRequest {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
    /// Vertex counts of the two paths.
    pub l1: usize,
    pub l2: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("sides have sizes {0} and {1}")]
    Unbalanced(usize, usize),
    #[error("endpoint {0} is not on its side or endpoints repeat")]
    BadEndpoint(usize),
    #[error("lengths {l1} + {l2} must be even, each in 4..=2N-4, summing to 2N = {total}")]
    BadLengths { l1: usize, l2: usize, total: usize },
    #[error("no embedding after {0} restarts")]
    Exhausted(usize),
}

impl TwoPathRequest {
    pub fn n_side(&self) -> usize {
        self.x.len()
    }

    pub fn validate(&self, n: usize) -> Result<(), EmbedError> {
        let big_n = self.x.len();
        if self.y.len() != big_n {
            return Err(EmbedError::Unbalanced(big_n, self.y.len()));
        }
        let xs = VertexSet::from_iter(n, self.x.iter().copied());
        let ys = VertexSet::from_iter(n, self.y.iter().copied());
        if xs.len() != big_n || ys.len() != big_n || !xs.is_disjoint(&ys) {
            return Err(EmbedError::Unbalanced(xs.len(), ys.len()));
        }
        for (v, side) in [(self.x1, &xs), (self.x2, &xs), (self.y1, &ys), (self.y2, &ys)] {
            if !side.contains(v) {
                return Err(EmbedError::BadEndpoint(v));
            }
        }
        if self.x1 == self.x2 {
            return Err(EmbedError::BadEndpoint(self.x2));
        }
        if self.y1 == self.y2 {
            return Err(EmbedError::BadEndpoint(self.y2));
        }
        let ok = |l: usize| l.is_multiple_of(2) && l >= 4 && l + 4 <= 2 * big_n;
        if !ok(self.l1) || !ok(self.l2) || self.l1 + self.l2 != 2 * big_n {
            return Err(EmbedError::BadLengths { l1: self.l1, l2: self.l2, total: 2 * big_n });
        }
        Ok(())
    }
}

/// Independent check of an embedding: both are paths of `g`, vertex-disjoint,
/// spanning `X ∪ Y`, with the requested ends and lengths.
pub fn check_two_paths(g: &Graph, req: &TwoPathRequest, p1: &[usize], p2: &[usize]) -> Result<(), String> {
    let n = g.n();
    let pool = VertexSet::from_iter(n, req.x.iter().chain(&req.y).copied());
    let mut seen = VertexSet::empty(n);
    for (p, (a, b, len)) in [(p1, (req.x1, req.y1, req.l1)), (p2, (req.x2, req.y2, req.l2))] {
        if p.len() != len {
            return Err(format!("path has {} vertices, expected {len}", p.len()));
        }
        if p.first() != Some(&a) || p.last() != Some(&b) {
            return Err(format!("path ends {:?}..{:?}, expected {a}..{b}", p.first(), p.last()));
        }
        for (i, &v) in p.iter().enumerate() {
            if v >= n || !pool.contains(v) || seen.contains(v) {
                return Err(format!("vertex {v} foreign or repeated"));
            }
            seen.insert(v);
            if i > 0 && !g.has_edge(p[i - 1], v) {
                return Err(format!("not an edge: {}-{v}", p[i - 1]));
            }
        }
    }
    if seen.len() != pool.len() {
        return Err("paths do not span the pair".into());
    }
    Ok(())
}

/// Restarts per request.
pub const EMBED_RESTARTS: usize = 50;

/// Embeds two vertex-disjoint paths `x1 → y1` and `x2 → y2` with `l1`, `l2`
/// vertices that together span the pair, using only `X`–`Y` edges.
///
/// The shorter path is laid first with an exact-length rotation–extension
/// search; the longer one is then a Hamiltonian path of what remains. Odd
/// restarts lay the longer path first instead.
pub fn embed_two_paths(g: &Graph, req: &TwoPathRequest, seed: u64) -> Result<(Vec<usize>, Vec<usize>), EmbedError> {
    req.validate(g.n())?;
    let big_n = req.n_side();
    // local ids: X = 0..N, Y = N..2N
    let verts: Vec<usize> = req.x.iter().chain(&req.y).copied().collect();
    let mut local = std::collections::HashMap::with_capacity(2 * big_n);
    for (i, &v) in verts.iter().enumerate() {
        local.insert(v, i);
    }
    let mut b = GraphBuilder::new(2 * big_n);
    for (i, &u) in req.x.iter().enumerate() {
        for w in g.neighbor_set(u).iter() {
            if let Some(&j) = local.get(&w) {
                if j >= big_n {
                    b.add_edge(i, j);
                }
            }
        }
    }
    let h = b.build();
    let ends = [(local[&req.x1], local[&req.y1], req.l1), (local[&req.x2], local[&req.y2], req.l2)];
    let budget = PosaBudget { restarts: 1, steps_per_vertex: 20 };
    for restart in 0..EMBED_RESTARTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seeds::derive_seed(seed, "embed", restart as u64));
        let short_first = ends[0].2 <= ends[1].2;
        let (first, second) = if short_first == (restart % 2 == 0) { (0, 1) } else { (1, 0) };
        let (s1, t1, len1) = ends[first];
        let (s2, t2, _) = ends[second];
        let mut allowed = VertexSet::full(2 * big_n);
        allowed.remove(s2);
        allowed.remove(t2);
        let Some(pa) = path_with_length(&h, &allowed, s1, t1, len1, &mut rng, budget) else {
            continue;
        };
        let mut rest = VertexSet::full(2 * big_n);
        for &v in &pa {
            rest.remove(v);
        }
        // every leftover vertex needs room to be threaded through
        let starved = rest.iter().any(|v| h.deg_in(v, &rest) < if v == s2 || v == t2 { 1 } else { 2 });
        if starved {
            continue;
        }
        let Some(pb) = hamiltonian_path(&h, &rest, s2, t2, &mut rng, budget) else {
            continue;
        };
        let back = |p: Vec<usize>| p.into_iter().map(|i| verts[i]).collect::<Vec<_>>();
        let (p1, p2) = if first == 0 { (back(pa), back(pb)) } else { (back(pb), back(pa)) };
        debug_assert!(check_two_paths(g, req, &p1, &p2).is_ok());
        return Ok((p1, p2));
    }
    Err(EmbedError::Exhausted(EMBED_RESTARTS))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// One cluster of a partner pair `(X_i, Y_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClusterRef {
    pub pair: usize,
    pub side: Side,
}

impl ClusterRef {
    pub fn partner(self) -> ClusterRef {
        ClusterRef { pair: self.pair, side: self.side.other() }
    }
}

/// `u ∼ A₁ ∼ B₁ (∼ A₂ ∼ B₂) ∼ v` with `{Aⱼ, Bⱼ}` partner pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub u: usize,
    pub v: usize,
    pub clusters: Vec<ClusterRef>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("no chain of length at most four between {0} and {1} within the caps")]
    NotFound(usize, usize),
}

/// Everything chain search reads: the current partner clusters, the regular
/// relation between clusters, and the friendliness fraction.
pub struct ChainContext<'a> {
    pub g: &'a Graph,
    pub xs: &'a [VertexSet],
    pub ys: &'a [VertexSet],
    pub regular: &'a dyn Fn(ClusterRef, ClusterRef) -> bool,
    pub fraction: f64,
}

impl ChainContext<'_> {
    pub fn set(&self, c: ClusterRef) -> &VertexSet {
        match c.side {
            Side::X => &self.xs[c.pair],
            Side::Y => &self.ys[c.pair],
        }
    }

    pub fn friendly(&self, v: usize, c: ClusterRef) -> bool {
        friendly(self.g, v, self.set(c), self.fraction)
    }
}

/// Per-cluster chain counts, indexed by pair and side.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ChainUsage(pub Vec<[usize; 2]>);

impl ChainUsage {
    pub fn new(k: usize) -> Self {
        ChainUsage(vec![[0; 2]; k])
    }

    pub fn get(&self, c: ClusterRef) -> usize {
        self.0[c.pair][c.side as usize]
    }

    fn bump(&mut self, c: ClusterRef) {
        self.0[c.pair][c.side as usize] += 1;
    }

    pub fn max(&self) -> usize {
        self.0.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// Finds a shortest `u,v`-chain avoiding clusters already used `cap` times,
/// preferring lightly used clusters, then low indices. Bumps the counters of
/// the clusters it returns.
pub fn find_chain(ctx: &ChainContext, u: usize, v: usize, usage: &mut ChainUsage, cap: usize) -> Result<Chain, ChainError> {
    let k = ctx.xs.len();
    let open = |c: ClusterRef, usage: &ChainUsage| usage.get(c) < cap;
    let refs: Vec<ClusterRef> =
        (0..k).flat_map(|pair| [Side::X, Side::Y].map(|side| ClusterRef { pair, side })).collect();
    let mut best: Option<(usize, Vec<ClusterRef>)> = None;
    for &a in &refs {
        let b = a.partner();
        if open(a, usage) && open(b, usage) && ctx.friendly(u, a) && ctx.friendly(v, b) {
            let load = usage.get(a).max(usage.get(b));
            if best.as_ref().is_none_or(|(l, _)| load < *l) {
                best = Some((load, vec![a, b]));
            }
        }
    }
    if best.is_none() {
        for &a1 in &refs {
            let b1 = a1.partner();
            if !(open(a1, usage) && open(b1, usage) && ctx.friendly(u, a1)) {
                continue;
            }
            for &a2 in &refs {
                let b2 = a2.partner();
                if a2.pair == a1.pair || !open(a2, usage) || !open(b2, usage) {
                    continue;
                }
                if !(ctx.regular)(b1, a2) || !ctx.friendly(v, b2) {
                    continue;
                }
                // a vertex of B₁ friendly to A₂ carries the middle link
                if !ctx.set(b1).iter().any(|z| z != u && z != v && ctx.friendly(z, a2)) {
                    continue;
                }
                let load = [a1, b1, a2, b2].iter().map(|&c| usage.get(c)).max().unwrap();
                if best.as_ref().is_none_or(|(l, _)| load < *l) {
                    best = Some((load, vec![a1, b1, a2, b2]));
                }
            }
        }
    }
    let (_, clusters) = best.ok_or(ChainError::NotFound(u, v))?;
    for &c in &clusters {
        usage.bump(c);
    }
    Ok(Chain { u, v, clusters })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn complete_pair(big_n: usize) -> (Graph, Vec<usize>, Vec<usize>) {
        let mut b = GraphBuilder::new(2 * big_n);
        for i in 0..big_n {
            for j in big_n..2 * big_n {
                b.add_edge(i, j);
            }
        }
        (b.build(), (0..big_n).collect(), (big_n..2 * big_n).collect())
    }

    fn req(x: &[usize], y: &[usize], l1: usize) -> TwoPathRequest {
        let big_n = x.len();
        TwoPathRequest { x: x.to_vec(), y: y.to_vec(), x1: x[0], x2: x[1], y1: y[0], y2: y[1], l1, l2: 2 * big_n - l1 }
    }

    #[test]
    fn complete_pairs_embed() {
        let (g, x, y) = complete_pair(4);
        let r = req(&x, &y, 4);
        let (p1, p2) = embed_two_paths(&g, &r, 1).unwrap();
        check_two_paths(&g, &r, &p1, &p2).unwrap();
        let (g, x, y) = complete_pair(10);
        let r = req(&x, &y, 4);
        let (p1, p2) = embed_two_paths(&g, &r, 1).unwrap();
        assert_eq!((p1.len(), p2.len()), (4, 16));
        check_two_paths(&g, &r, &p1, &p2).unwrap();
    }

    #[test]
    fn request_validation() {
        let (g, x, y) = complete_pair(6);
        let n = g.n();
        assert!(matches!(req(&x, &y, 5).validate(n), Err(EmbedError::BadLengths { .. })));
        assert!(matches!(req(&x, &y, 2).validate(n), Err(EmbedError::BadLengths { .. })));
        assert!(matches!(req(&x, &y, 10).validate(n), Err(EmbedError::BadLengths { .. })));
        let mut r = req(&x, &y, 4);
        r.x2 = r.x1;
        assert!(matches!(r.validate(n), Err(EmbedError::BadEndpoint(_))));
        let mut r = req(&x, &y, 4);
        r.y1 = x[3];
        assert!(matches!(r.validate(n), Err(EmbedError::BadEndpoint(_))));
        let r = req(&x[..5], &y, 4);
        assert!(matches!(r.validate(n), Err(EmbedError::Unbalanced(5, 6))));
    }

    #[test]
    fn random_dense_pair() {
        let big_n = 60;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut b = GraphBuilder::new(2 * big_n);
        for i in 0..big_n {
            for j in big_n..2 * big_n {
                if rng.gen_bool(0.7) {
                    b.add_edge(i, j);
                }
            }
        }
        let g = b.build();
        let x: Vec<usize> = (0..big_n).collect();
        let y: Vec<usize> = (big_n..2 * big_n).collect();
        for l1 in [4, 30, 60, 116] {
            let r = req(&x, &y, l1);
            let (p1, p2) = embed_two_paths(&g, &r, l1 as u64).unwrap();
            check_two_paths(&g, &r, &p1, &p2).unwrap();
        }
    }

    #[test]
    fn checker_catches_overlap() {
        let (g, x, y) = complete_pair(4);
        let r = req(&x, &y, 4);
        assert!(check_two_paths(&g, &r, &[0, 4, 2, 5], &[1, 6, 3, 5]).is_err());
        assert!(check_two_paths(&g, &r, &[0, 4, 2, 4], &[1, 6, 3, 5]).is_err());
        assert!(check_two_paths(&g, &r, &[0, 6, 2, 4], &[1, 7, 3, 5]).is_ok());
    }

    fn chain_fixture() -> (Graph, Vec<VertexSet>, Vec<VertexSet>) {
        // clusters of 3 vertices: X0 0..3, Y0 3..6, X1 6..9, Y1 9..12; u = 12, v = 13
        let n = 14;
        let mut b = GraphBuilder::new(n);
        let xs: Vec<VertexSet> = [0, 6].iter().map(|&s| VertexSet::from_iter(n, s..s + 3)).collect();
        let ys: Vec<VertexSet> = [3, 9].iter().map(|&s| VertexSet::from_iter(n, s..s + 3)).collect();
        for i in 0..2 {
            for a in xs[i].iter() {
                for c in ys[i].iter() {
                    b.add_edge(a, c);
                }
            }
        }
        // Y0 friendly to X1 through a complete join
        for a in ys[0].iter() {
            for c in xs[1].iter() {
                b.add_edge(a, c);
            }
        }
        for a in xs[0].iter() {
            b.add_edge(12, a);
        }
        for c in ys[1].iter() {
            b.add_edge(13, c);
        }
        (b.build(), xs, ys)
    }

    #[test]
    fn length_four_chain() {
        let (g, xs, ys) = chain_fixture();
        let regular = |a: ClusterRef, b: ClusterRef| {
            a.pair != b.pair && a.side != b.side && [a, b].iter().any(|c| c.pair == 0 && c.side == Side::Y)
        };
        let ctx = ChainContext { g: &g, xs: &xs, ys: &ys, regular: &regular, fraction: 0.5 };
        let mut usage = ChainUsage::new(2);
        let c = find_chain(&ctx, 12, 13, &mut usage, 2).unwrap();
        let x0 = ClusterRef { pair: 0, side: Side::X };
        let x1 = ClusterRef { pair: 1, side: Side::X };
        assert_eq!(c.clusters, vec![x0, x0.partner(), x1, x1.partner()]);
        assert_eq!(usage.max(), 1);
        find_chain(&ctx, 12, 13, &mut usage, 2).unwrap();
        // every cluster now sits at the cap
        assert_eq!(find_chain(&ctx, 12, 13, &mut usage, 2), Err(ChainError::NotFound(12, 13)));
    }

    #[test]
    fn length_two_chain_preferred() {
        let (g, xs, ys) = chain_fixture();
        let regular = |_: ClusterRef, _: ClusterRef| true;
        let ctx = ChainContext { g: &g, xs: &xs, ys: &ys, regular: &regular, fraction: 0.5 };
        let mut usage = ChainUsage::new(2);
        // 12 is friendly to X0, and 0 is friendly to Y0
        let c = find_chain(&ctx, 12, 0, &mut usage, 5).unwrap();
        assert_eq!(c.clusters.len(), 2);
        assert!(friendly(&g, 12, &xs[0], 1.0));
        assert!(!friendly(&g, 12, &ys[0], 0.1));
    }
}
