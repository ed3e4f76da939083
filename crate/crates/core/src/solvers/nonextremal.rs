//! The regularity-based construction for graphs far from both extremal
//! configurations.
//!
//! Clusters along a Hamiltonian cycle of the reduced graph are paired up as
//! (X_i, Y_i). Two families of connectors P_i, Q_i join Y_i to X_{i+1}; x and
//! y sit inside P-connectors. Leftover vertices are absorbed into the Q
//! connectors, and finally every pair receives two spanning paths whose
//! lengths put y exactly n/2 steps after x along the P side.

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::frame::{is_ham_cycle, Frame, Piece};
use super::{Construction, SolverError, Stages};
use crate::certificate::cycle_distance;
use crate::embedder::{embed_two_paths, find_chain, friendly, ChainContext, ChainUsage, ClusterRef, Side, TwoPathRequest};
use crate::graph::{Graph, VertexSet};
use crate::regularity::{
    build_partition, check_nonextremal_reduced, hamiltonian_cycle_reduced, is_super_regular, reduced_graph, Params,
    ReducedGraph, RegularityMode, RegularityPartition,
};
use crate::seeds;

const SOLVER: &str = "non_extremal";

/// Connector-stage attempts over successively worse (X, Y) cluster choices.
const CLUSTER_CHOICES: usize = 8;

fn fail(stage: &str, detail: impl std::fmt::Display) -> SolverError {
    SolverError::new(SOLVER, stage, detail)
}

/// Which class the cluster friendly to y received after relabelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// y joins Y_t on P_t.
    Y,
    /// y joins X_t on P_{t−1}.
    X,
}

/// The connector layout. Pair `i` (0-based) is `(X_i, Y_i)`; `p[i]` and
/// `q[i]` run from their Y_i end to their X_{i+1} end.
#[derive(Debug, Clone)]
pub struct ConnectorPlan {
    pub k: usize,
    /// Host cluster index of X_i and Y_i.
    pub x_cluster: Vec<usize>,
    pub y_cluster: Vec<usize>,
    pub placement: Placement,
    pub t: usize,
    pub p: Vec<Vec<usize>>,
    pub q: Vec<Vec<usize>>,
    /// Internal vertices of all connectors.
    pub int: VertexSet,
    /// Current (trimmed) sides of each pair.
    pub xs: Vec<VertexSet>,
    pub ys: Vec<VertexSet>,
    pub parity_fixed: bool,
}

/// Vertex counts of the two spanning paths of each pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthPlan {
    pub l1: Vec<usize>,
    pub l2: Vec<usize>,
    /// Pairs whose first path lies between x and y.
    pub arc_pairs: Vec<usize>,
    /// Required total of `l1` over `arc_pairs`.
    pub arc_total: usize,
    /// Feasibility window `[4·|arc|, Σ(2N_i − 4)]` for `arc_total`.
    pub window: (usize, usize),
}

struct Ctx<'a> {
    g: &'a Graph,
    part: &'a RegularityPartition,
    frac: f64,
}

impl Ctx<'_> {
    fn friendly_to(&self, v: usize, cluster: usize) -> bool {
        friendly(self.g, v, &self.part.clusters[cluster], self.frac)
    }

    fn deg_to(&self, v: usize, cluster: usize) -> usize {
        self.g.deg_in(v, &self.part.clusters[cluster])
    }

    /// Highest-scoring member of `cands`, lowest id on ties.
    fn best(&self, cands: &VertexSet, score: impl Fn(usize) -> usize) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for v in cands.iter() {
            let s = score(v);
            if best.is_none_or(|(bs, _)| s > bs) {
                best = Some((s, v));
            }
        }
        best.map(|(_, v)| v)
    }

    /// Joins `anchor` to `host`: returns `[e, anchor, w, f]` with `e, w` in
    /// `host`, `e` friendly to `host_partner`, `w` friendly to `next` and `f`
    /// a neighbour of `w` in `next` friendly to `next_partner`.
    fn join(
        &self,
        anchor: usize,
        host: usize,
        host_partner: usize,
        next: usize,
        next_partner: usize,
        used: &VertexSet,
    ) -> Option<[usize; 4]> {
        let g = self.g;
        let nb = g.neighbor_set(anchor).intersection(&self.part.clusters[host]).difference(used);
        let mut ws: Vec<usize> = nb.iter().filter(|&w| self.friendly_to(w, next)).collect();
        ws.sort_by_key(|&w| (std::cmp::Reverse(self.deg_to(w, next)), w));
        for w in ws {
            let fs = VertexSet::from_iter(
                g.n(),
                g.neighbors(w).filter(|&f| {
                    self.part.clusters[next].contains(f) && !used.contains(f) && self.friendly_to(f, next_partner)
                }),
            );
            let Some(f) = self.best(&fs, |f| self.deg_to(f, next_partner)) else { continue };
            let mut es = nb.clone();
            es.remove(w);
            let es = VertexSet::from_iter(g.n(), es.iter().filter(|&e| self.friendly_to(e, host_partner)));
            if let Some(e) = self.best(&es, |e| self.deg_to(e, host_partner)) {
                return Some([e, anchor, w, f]);
            }
        }
        None
    }

    /// An edge `a b` with `a ∈ from` friendly to `from_partner` and `b ∈ to`
    /// friendly to `to_partner`.
    fn edge(&self, from: usize, from_partner: usize, to: usize, to_partner: usize, used: &VertexSet) -> Option<[usize; 2]> {
        let g = self.g;
        let mut as_: Vec<usize> = self.part.clusters[from]
            .difference(used)
            .iter()
            .filter(|&a| self.friendly_to(a, from_partner))
            .collect();
        as_.sort_by_key(|&a| (std::cmp::Reverse(self.deg_to(a, to)), a));
        for a in as_ {
            let bs = VertexSet::from_iter(
                g.n(),
                g.neighbors(a).filter(|&b| {
                    self.part.clusters[to].contains(b) && !used.contains(b) && self.friendly_to(b, to_partner)
                }),
            );
            if let Some(b) = self.best(&bs, |b| self.deg_to(b, to_partner)) {
                return Some([a, b]);
            }
        }
        None
    }
}

/// Candidate (X, Y) positions on the reduced cycle with x friendly to Y and
/// y friendly to X, closest first.
fn cluster_choices(ctx: &Ctx, ring: &[usize], x: usize, y: usize) -> Vec<(usize, usize)> {
    let l = ring.len();
    let mut out = vec![];
    for a in 0..l {
        if !ctx.friendly_to(y, ring[a]) {
            continue;
        }
        for b in 0..l {
            if a != b && ctx.friendly_to(x, ring[b]) {
                let f = (a + l - b) % l;
                out.push((f.min(l - f), b, a));
            }
        }
    }
    out.sort();
    out.into_iter().map(|(_, b, a)| (a, b)).collect()
}

/// Builds every connector for one choice of X (ring position `a`) and Y
/// (ring position `b`), including the parity fix when n/2 needs it.
fn build_connectors(ctx: &Ctx, ring: &[usize], a: usize, b: usize, x: usize, y: usize) -> Result<ConnectorPlan, String> {
    let g = ctx.g;
    let n = g.n();
    let l = ring.len();
    let k = l / 2;
    // walk from Y along the longer way round to X
    let f = (a + l - b) % l;
    let dir_fwd = f >= l - f;
    let c = |j: usize| if dir_fwd { ring[(b + j) % l] } else { ring[(b + l - j % l) % l] };
    let p_x = if dir_fwd { f } else { l - f };
    let y_cluster: Vec<usize> = (0..k).map(|i| c(2 * i)).collect();
    let x_cluster: Vec<usize> = (0..k).map(|i| c((2 * i + l - 1) % l)).collect();
    let (placement, t) = if p_x % 2 == 0 { (Placement::Y, p_x / 2) } else { (Placement::X, p_x.div_ceil(2) % k) };
    let nx = |i: usize| (i + 1) % k;

    let mut used = VertexSet::from_iter(n, [x, y]);
    let mut p: Vec<Vec<usize>> = vec![vec![]; k];
    let mut q: Vec<Vec<usize>> = vec![vec![]; k];
    let mark = |used: &mut VertexSet, path: &[usize]| path.iter().for_each(|&v| used.insert(v));

    let px = ctx
        .join(x, y_cluster[0], x_cluster[0], x_cluster[nx(0)], y_cluster[nx(0)], &used)
        .ok_or("cannot join x to Y_1")?;
    mark(&mut used, &px);
    p[0] = px.to_vec();
    let y_conn = match placement {
        Placement::Y => {
            let j = ctx
                .join(y, y_cluster[t], x_cluster[t], x_cluster[nx(t)], y_cluster[nx(t)], &used)
                .ok_or("cannot join y to Y_t")?;
            p[t] = j.to_vec();
            t
        }
        Placement::X => {
            let prev = (t + k - 1) % k;
            let mut j = ctx
                .join(y, x_cluster[t], y_cluster[t], y_cluster[prev], x_cluster[prev], &used)
                .ok_or("cannot join y to X_t")?;
            j.reverse();
            p[prev] = j.to_vec();
            prev
        }
    };
    if y_conn == 0 {
        return Err("x and y would share a connector".into());
    }
    mark(&mut used, &p[y_conn]);
    for i in 0..k {
        if p[i].is_empty() {
            let e = ctx
                .edge(y_cluster[i], x_cluster[i], x_cluster[nx(i)], y_cluster[nx(i)], &used)
                .ok_or_else(|| format!("no P connector out of Y_{i}"))?;
            mark(&mut used, &e);
            p[i] = e.to_vec();
        }
    }
    for i in 0..k {
        let e = ctx
            .edge(y_cluster[i], x_cluster[i], x_cluster[nx(i)], y_cluster[nx(i)], &used)
            .ok_or_else(|| format!("no Q connector out of Y_{i}"))?;
        mark(&mut used, &e);
        q[i] = e.to_vec();
    }

    // x sits in an X-like slot of P_0; y in an X-like slot (placement Y) or a
    // Y-like slot (placement X). Every pair path has an even vertex count, so
    // the number of connector vertices strictly between x and y decides parity.
    let between = match placement {
        Placement::Y => 1,
        Placement::X => 2,
    };
    let parity_fixed = (n / 2 - 1 - between) % 2 == 1;
    if parity_fixed {
        let v0 = &ctx.part.v0;
        let pick = |a: usize, b: usize, used: &VertexSet| {
            let common = g.common_neighbors(a, b).difference(used);
            common.intersection(v0).first().or_else(|| common.first())
        };
        // a plain P connector strictly between x and y, else the edge after w_x
        let arc_end = match placement {
            Placement::Y => t,
            Placement::X => y_conn,
        };
        let mut placed = false;
        for j in 1..arc_end {
            if p[j].len() == 2 {
                if let Some(u) = pick(p[j][0], p[j][1], &used) {
                    used.insert(u);
                    p[j].insert(1, u);
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            let u = pick(p[0][2], p[0][3], &used).ok_or("no common neighbour for the parity fix")?;
            used.insert(u);
            p[0].insert(3, u);
        }
        let j = if k > 1 { 1 } else { 0 };
        let u2 = pick(q[j][0], q[j][1], &used).ok_or("no common neighbour for the balancing vertex")?;
        used.insert(u2);
        q[j].insert(1, u2);
    }

    let mut int = VertexSet::empty(n);
    for path in p.iter().chain(&q) {
        for &v in &path[1..path.len() - 1] {
            int.insert(v);
        }
    }
    Ok(ConnectorPlan {
        k,
        x_cluster,
        y_cluster,
        placement,
        t,
        p,
        q,
        int,
        xs: vec![],
        ys: vec![],
        parity_fixed,
    })
}

/// Drops the weakest non-endpoints of `big` until it is no larger than `small`.
fn shrink(g: &Graph, big: &mut VertexSet, small: &VertexSet, ends: &VertexSet) {
    let excess = big.len().saturating_sub(small.len());
    let mut weak: Vec<usize> = big.iter().filter(|&v| !ends.contains(v)).collect();
    weak.sort_by_key(|&v| (g.deg_in(v, small), v));
    for &v in weak.iter().take(excess) {
        big.remove(v);
    }
}

impl ConnectorPlan {
    fn endpoints(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.p.iter().chain(&self.q).flat_map(|path| [path[0], *path.last().unwrap()]))
    }

    /// `X_i'`, `Y_i'`: cluster vertices with at least `thr` neighbours in the
    /// partner cluster, minus connector internals, rebalanced by dropping the
    /// weakest non-endpoints of the larger side.
    fn trim(&mut self, g: &Graph, part: &RegularityPartition, thr: f64) {
        let n = g.n();
        let ends = self.endpoints(n);
        self.xs.clear();
        self.ys.clear();
        for i in 0..self.k {
            let (cx, cy) = (&part.clusters[self.x_cluster[i]], &part.clusters[self.y_cluster[i]]);
            let keep = |from: &VertexSet, to: &VertexSet| {
                VertexSet::from_iter(
                    n,
                    from.iter().filter(|&v| !self.int.contains(v) && g.deg_in(v, to) as f64 >= thr),
                )
            };
            let mut xs = keep(cx, cy);
            let mut ys = keep(cy, cx);
            shrink(g, &mut xs, &ys, &ends);
            shrink(g, &mut ys, &xs, &ends);
            self.xs.push(xs);
            self.ys.push(ys);
        }
    }

    fn side_mut(&mut self, c: ClusterRef) -> &mut VertexSet {
        match c.side {
            Side::X => &mut self.xs[c.pair],
            Side::Y => &mut self.ys[c.pair],
        }
    }

    fn side(&self, c: ClusterRef) -> &VertexSet {
        match c.side {
            Side::X => &self.xs[c.pair],
            Side::Y => &self.ys[c.pair],
        }
    }

    /// Inserts `w` so that it behaves like a vertex of side `into`. For the
    /// X side of pair i, Q_i grows at its Y_i end by `w3 w w2 w1`; for the Y
    /// side, Q_{i−1} grows at its X_i end by `w4 w5 w w6`. `w3` (resp. `w6`)
    /// becomes the new end and must be friendly to the partner side.
    fn insert(&mut self, g: &Graph, w: usize, into: ClusterRef, frac: f64) -> Result<(), String> {
        let n = g.n();
        let k = self.k;
        let i = into.pair;
        let ends = self.endpoints(n);
        let same = self.side(into).difference(&ends);
        let other = self.side(into.partner()).difference(&ends);
        let partner_len = |s: &VertexSet| s.len() as f64 * frac;
        let (qi, at_front) = match into.side {
            Side::X => (i, true),
            Side::Y => ((i + k - 1) % k, false),
        };
        let end = if at_front { self.q[qi][0] } else { *self.q[qi].last().unwrap() };
        // `near` is adjacent to the current end and lives on the side being
        // inserted into; `mid` links it to w; `fresh` is the new end
        let mut nears: Vec<usize> = g.neighbor_set(end).intersection(&same).iter().collect();
        nears.sort_by_key(|&v| (std::cmp::Reverse(g.deg_in(v, &other)), v));
        for near in nears {
            let mids = g.common_neighbors(w, near).intersection(&other);
            let Some(mid) = mids.first() else { continue };
            let mut fresh_pool = g.neighbor_set(w).intersection(&other);
            fresh_pool.remove(mid);
            let target = self.side(into).clone();
            let fresh = fresh_pool
                .iter()
                .filter(|&f| g.deg_in(f, &target) as f64 >= partner_len(&target))
                .max_by_key(|&f| (g.deg_in(f, &target), std::cmp::Reverse(f)));
            let Some(fresh) = fresh else { continue };
            if at_front {
                let mut grown = vec![fresh, w, mid, near];
                grown.extend_from_slice(&self.q[qi]);
                self.q[qi] = grown;
            } else {
                self.q[qi].extend([near, mid, w, fresh]);
            }
            // the old end, `near` and `mid` become internal
            for v in [w, mid, near, end] {
                self.int.insert(v);
            }
            self.side_mut(into).remove(near);
            self.side_mut(into.partner()).remove(mid);
            match into.side {
                Side::X => self.ys[i].remove(end),
                Side::Y => self.xs[i].remove(end),
            }
            return Ok(());
        }
        Err(format!("cannot insert {w} into pair {i}"))
    }
}

fn cluster_ref_index(plan: &ConnectorPlan, c: ClusterRef) -> usize {
    match c.side {
        Side::X => plan.x_cluster[c.pair],
        Side::Y => plan.y_cluster[c.pair],
    }
}

/// Absorbs V₀ pair by pair through chains of length two or four.
fn absorb(
    g: &Graph,
    plan: &mut ConnectorPlan,
    r: &ReducedGraph,
    v0: Vec<usize>,
    frac: f64,
    cap: usize,
) -> Result<(usize, usize, usize), String> {
    let mut usage = ChainUsage::new(plan.k);
    let mut rest = v0;
    let (mut short, mut long) = (0, 0);
    while let Some(u) = rest.first().copied() {
        rest.remove(0);
        let mut found = None;
        for (idx, &v) in rest.iter().enumerate() {
            let regular = |a: ClusterRef, b: ClusterRef| {
                r.graph.has_edge(cluster_ref_index(plan, a), cluster_ref_index(plan, b))
            };
            let ctx = ChainContext { g, xs: &plan.xs, ys: &plan.ys, regular: &regular, fraction: frac };
            let mut trial = usage.clone();
            if let Ok(chain) = find_chain(&ctx, u, v, &mut trial, cap) {
                found = Some((idx, chain, trial));
                break;
            }
        }
        let (idx, chain, trial) = found.ok_or_else(|| format!("no chain for {u}"))?;
        let v = rest.remove(idx);
        usage = trial;
        let cs = &chain.clusters;
        if cs.len() == 2 {
            plan.insert(g, u, cs[1], frac)?;
            plan.insert(g, v, cs[0], frac)?;
            short += 1;
        } else {
            let (b1, a2, b2) = (cs[1], cs[2], cs[3]);
            plan.insert(g, u, b1, frac)?;
            let ends = plan.endpoints(g.n());
            let a2_set = plan.side(a2).clone();
            let z = plan
                .side(b1)
                .difference(&ends)
                .iter()
                .filter(|&z| friendly(g, z, &a2_set, frac))
                .max_by_key(|&z| (g.deg_in(z, &a2_set), std::cmp::Reverse(z)))
                .ok_or("no relay vertex for a long chain")?;
            plan.side_mut(b1).remove(z);
            plan.insert(g, z, b2, frac)?;
            plan.insert(g, v, a2, frac)?;
            long += 1;
        }
    }
    Ok((short, long, usage.max()))
}

/// Lays the cycle out as connector internals and one slot per pair path.
/// Slot `i` is the P-side path of pair i, slot `k + i` the Q-side one.
fn frame_of(plan: &ConnectorPlan) -> Frame {
    let k = plan.k;
    let mut f = Frame::new();
    f.slots = vec![(0, 0); 2 * k];
    for (track, conns, other) in [(0, &plan.p, &plan.q), (k, &plan.q, &plan.p)] {
        for i in 0..k {
            let j = (i + 1) % k;
            let path = &conns[i];
            f.fixed(&path[1..path.len() - 1]);
            let to = if j == 0 { other[0][0] } else { conns[j][0] };
            f.slots[track + j] = (*path.last().unwrap(), to);
            f.pieces.push(Piece::Slot(track + j));
        }
    }
    f
}

fn length_plan(plan: &ConnectorPlan, frame: &Frame, n: usize, x: usize, y: usize) -> Result<LengthPlan, String> {
    let k = plan.k;
    let sizes: Vec<usize> = plan.xs.iter().map(|s| s.len()).collect();
    if let Some(i) = sizes.iter().position(|&s| s < 4) {
        return Err(format!("pair {i} has only {} vertices per side", sizes[i]));
    }
    let (fixed, slots) = frame.arc(x, y).ok_or("x and y not on the frame")?;
    if slots.iter().any(|&s| s >= k) {
        return Err("a Q-side path lies between x and y".into());
    }
    let target = (n / 2 - 1).checked_sub(fixed).ok_or("too many connector vertices between x and y")?;
    let lo = 4 * slots.len();
    let hi: usize = slots.iter().map(|&s| 2 * sizes[s] - 4).sum();
    if target % 2 == 1 || target < lo || target > hi {
        return Err(format!("arc total {target} infeasible in window [{lo}, {hi}]"));
    }
    let mut l1: Vec<usize> = sizes.iter().map(|&s| if s % 2 == 0 { s } else { s - 1 }).collect();
    for &s in &slots {
        l1[s] = 4;
    }
    let mut sum = lo;
    // grow the least-filled arc path two vertices at a time
    while sum < target {
        let &s = slots
            .iter()
            .filter(|&&s| l1[s] + 4 < 2 * sizes[s])
            .min_by(|&&a, &&b| (l1[a] * sizes[b]).cmp(&(l1[b] * sizes[a])).then(a.cmp(&b)))
            .expect("window checked");
        l1[s] += 2;
        sum += 2;
    }
    let l2: Vec<usize> = (0..k).map(|i| 2 * sizes[i] - l1[i]).collect();
    Ok(LengthPlan { l1, l2, arc_pairs: slots, arc_total: target, window: (lo, hi) })
}

/// Runs the full pipeline. `n` must be even; x ≠ y.
pub fn solve_nonextremal(g: &Graph, x: usize, y: usize, params: &Params, seed: u64) -> Result<Construction, SolverError> {
    let n = g.n();
    if n % 2 == 1 || x == y || x >= n || y >= n {
        return Err(fail("input", format!("needs even n and distinct x, y (n = {n})")));
    }
    let mut stages = Stages::start();
    let part = build_partition(g, params, seed).map_err(|e| fail("partition", e))?;
    stages.mark("partition");

    let r = reduced_graph(&part, params);
    if !r.meets_degree_bound(params.d) {
        return Err(fail("reduced_graph", format!("δ(R) = {} below (1/2 − 2d)·l", r.min_degree())));
    }
    let check = check_nonextremal_reduced(&r, params, seed);
    if !check.passed() {
        return Err(fail("reduced_graph", "reduced graph looks extremal"));
    }
    let l = r.l();
    if l < 4 || l % 2 == 1 {
        return Err(fail("reduced_graph", format!("need an even number ≥ 4 of clusters, have {l}")));
    }
    let ring = hamiltonian_cycle_reduced(&r, seed).map_err(|e| fail("reduced_cycle", e))?;
    stages.mark("reduced_graph");

    let frac = params.friendly_fraction();
    let ctx = Ctx { g, part: &part, frac };
    let choices = cluster_choices(&ctx, &ring, x, y);
    if choices.is_empty() {
        return Err(fail("cluster_choice", "no clusters friendly to x and y"));
    }
    let mut last_err = String::new();
    let mut plan = None;
    for &(a, b) in choices.iter().take(CLUSTER_CHOICES) {
        match build_connectors(&ctx, &ring, a, b, x, y) {
            Ok(p) => {
                plan = Some(p);
                break;
            }
            Err(e) => last_err = e,
        }
    }
    let mut plan = plan.ok_or_else(|| fail("connectors", last_err))?;
    stages.mark("connectors");

    let big_l = part.cluster_size;
    plan.trim(g, &part, frac * big_l as f64);
    let mut in_pairs = plan.int.clone();
    for s in plan.xs.iter().chain(&plan.ys) {
        in_pairs.union_with(s);
    }
    let v0: Vec<usize> = (0..n).filter(|&v| !in_pairs.contains(v)).collect();
    if v0.len() % 2 == 1 {
        return Err(fail("trim", format!("odd leftover count {}", v0.len())));
    }
    let v0_count = v0.len();
    stages.mark("trim");

    let cap = ((params.d / 10.0) * big_l as f64).floor().max(1.0) as usize;
    let (short, long, max_usage) = absorb(g, &mut plan, &r, v0, frac, cap).map_err(|e| fail("absorption", e))?;
    stages.mark("absorption");

    let mut covered = plan.int.len();
    for i in 0..plan.k {
        if plan.xs[i].len() != plan.ys[i].len() {
            return Err(fail("final_trim", format!("pair {i} unbalanced")));
        }
        covered += 2 * plan.xs[i].len();
        let mode = RegularityMode::sampled(seeds::derive_seed(seed, "super", i as u64));
        let sr = is_super_regular(g, &plan.xs[i], &plan.ys[i], 2.0 * params.eps, params.d / 2.0, mode)
            .map_err(|e| fail("final_trim", e))?;
        if !sr.super_regular {
            return Err(fail("final_trim", format!("pair {i} is not (2ε, d/2)-super-regular")));
        }
    }
    if covered != n {
        return Err(fail("final_trim", format!("accounting covers {covered} of {n} vertices")));
    }
    stages.mark("final_trim");

    let frame = frame_of(&plan);
    let lengths = length_plan(&plan, &frame, n, x, y).map_err(|e| fail("lengths", e))?;
    stages.mark("lengths");

    let k = plan.k;
    let mut paths = vec![vec![]; 2 * k];
    let mut rng = seeds::rng_for(seed, "non-extremal-embed", n as u64);
    for i in 0..k {
        let (a1, b1) = frame.slots[i];
        let (a2, b2) = frame.slots[k + i];
        let req = TwoPathRequest {
            x: plan.xs[i].to_vec(),
            y: plan.ys[i].to_vec(),
            x1: a1,
            y1: b1,
            x2: a2,
            y2: b2,
            l1: lengths.l1[i],
            l2: lengths.l2[i],
        };
        let (p1, p2) = embed_two_paths(g, &req, rng.gen()).map_err(|e| fail("embedding", format!("pair {i}: {e}")))?;
        paths[i] = p1;
        paths[k + i] = p2;
    }
    stages.mark("embedding");

    let order = frame.assemble(&paths).map_err(|e| fail("assembly", e))?;
    if !is_ham_cycle(g, &order) || cycle_distance(&order, x, y) != Ok(n / 2) {
        return Err(fail("assembly", "assembled order is not a valid certificate"));
    }
    stages.mark("assembly");

    let notes = json!({
        "clusters": l,
        "cluster_size": big_l,
        "placement": plan.placement,
        "t": plan.t,
        "parity_fixed": plan.parity_fixed,
        "absorbed": v0_count,
        "chains": { "short": short, "long": long, "cap": cap, "max_usage": max_usage },
        "lengths": lengths,
    });
    Ok(Construction { order, stages: stages.finish(), notes })
}
