//! Graphs whose vertex set splits into two halves with an almost complete
//! cut. A spanning bipartite scaffold is extracted first; the cycle is then a
//! small gadget around x and y, a path collecting the low-degree vertices,
//! and two long paths through the remaining almost complete bipartite pair.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::frame::{is_ham_cycle, Frame, Piece};
use super::{Construction, SolverError, Stages, TwoPath};
use crate::certificate::cycle_distance;
use crate::embedder::{embed_two_paths, TwoPathRequest};
use crate::graph::{Graph, VertexSet};
use crate::regularity::Params;

const SOLVER: &str = "ec1";

fn fail(stage: &str, detail: impl std::fmt::Display) -> SolverError {
    SolverError::new(SOLVER, stage, detail)
}

/// A balanced bipartition `(U1, U2)` in which every vertex outside `w` has
/// almost all of the other side as neighbours, and every vertex of `w` is
/// the middle of a 2-path with both ends on the other side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ec1Scaffold {
    pub u1: Vec<usize>,
    pub u2: Vec<usize>,
    pub w: Vec<usize>,
    pub two_paths: Vec<TwoPath>,
    /// `a`: both halves were short, `b`: high-degree movers covered the
    /// excess, `c`: middles of 2-paths inside the long side were moved.
    pub case: char,
}

/// `deg(v, other side) ≥ (1 − α₁ − 2α₂)·n/2` for all `v ∉ W`.
pub fn scaffold_degree_ok(g: &Graph, s: &Ec1Scaffold, params: &Params) -> bool {
    let n = g.n();
    let bound = (1.0 - params.alpha1() - 2.0 * params.alpha2()) * n as f64 / 2.0;
    let u1 = VertexSet::from_iter(n, s.u1.iter().copied());
    let u2 = VertexSet::from_iter(n, s.u2.iter().copied());
    let w = VertexSet::from_iter(n, s.w.iter().copied());
    let deg = |v: usize, other: &VertexSet| g.deg_in(v, other);
    s.u1.iter().filter(|&&v| !w.contains(v)).all(|&v| deg(v, &u2) as f64 >= bound)
        && s.u2.iter().filter(|&&v| !w.contains(v)).all(|&v| deg(v, &u1) as f64 >= bound)
}

/// Greedy 2-paths through each of `mids`, ends taken from `pool` minus
/// `taken`; ends are never `x` or `y`.
fn two_paths_into(
    g: &Graph,
    mids: &[usize],
    pool_of: impl Fn(usize) -> VertexSet,
    taken: &mut VertexSet,
    avoid: [usize; 2],
) -> Result<Vec<TwoPath>, String> {
    let mut out = vec![];
    for &m in mids {
        let mut free = g.neighbor_set(m).intersection(&pool_of(m)).difference(taken);
        free.remove(avoid[0]);
        free.remove(avoid[1]);
        let mut it = free.iter();
        let (Some(a), Some(b)) = (it.next(), it.next()) else {
            return Err(format!("no two free neighbours on the far side of {m}"));
        };
        taken.insert(a);
        taken.insert(b);
        taken.insert(m);
        out.push((a, m, b));
    }
    Ok(out)
}

/// Builds the scaffold from a balanced bipartition with a dense cut.
pub fn ec1_scaffold(g: &Graph, v1: &[usize], v2: &[usize], params: &Params, x: usize, y: usize) -> Result<Ec1Scaffold, String> {
    let n = g.n();
    let half = n / 2;
    if n % 2 == 1 || v1.len() != half || v2.len() != half {
        return Err("needs a balanced bipartition of an even order".into());
    }
    let a1 = params.alpha1();
    let hi = (1.0 - a1) * half as f64;
    let s1 = VertexSet::from_iter(n, v1.iter().copied());
    let s2 = VertexSet::from_iter(n, v2.iter().copied());
    let mut p1 = VertexSet::empty(n);
    let mut p2 = VertexSet::empty(n);
    for v in 0..n {
        if s1.contains(v) && g.deg_in(v, &s2) as f64 >= hi {
            p1.insert(v);
        } else if s2.contains(v) && g.deg_in(v, &s1) as f64 >= hi {
            p2.insert(v);
        }
    }
    // vertices that look like members of the other half switch sides
    for v in 0..n {
        let (own, other) = if s1.contains(v) { (&s1, &s2) } else { (&s2, &s1) };
        if (g.deg_in(v, other) as f64) < hi && g.deg_in(v, own) as f64 >= hi {
            if s1.contains(v) {
                p2.insert(v);
            } else {
                p1.insert(v);
            }
        }
    }
    let v0: Vec<usize> = (0..n).filter(|&v| !p1.contains(v) && !p2.contains(v)).collect();
    let avoid = [x, y];

    if p1.len() <= half && p2.len() <= half {
        let (mut u1, mut u2) = (p1.clone(), p2.clone());
        let mut w1 = vec![];
        let mut w2 = vec![];
        for &v in &v0 {
            let to1 = u1.len() < half && (u2.len() >= half || g.deg_in(v, &p2) >= g.deg_in(v, &p1));
            if to1 {
                u1.insert(v);
                w1.push(v);
            } else {
                u2.insert(v);
                w2.push(v);
            }
        }
        let mut taken = VertexSet::from_iter(n, v0.iter().copied());
        let (q1, q2) = (p1.clone(), p2.clone());
        let mut tp = two_paths_into(g, &w1, |_| q2.clone(), &mut taken, avoid)?;
        tp.extend(two_paths_into(g, &w2, |_| q1.clone(), &mut taken, avoid)?);
        return Ok(Ec1Scaffold { u1: u1.to_vec(), u2: u2.to_vec(), w: v0, two_paths: tp, case: 'a' });
    }

    let flipped = p2.len() > half;
    let (big, small) = if flipped { (p2, p1) } else { (p1, p2) };
    let excess = big.len() - half;
    let mut intra: Vec<usize> = big.iter().filter(|&v| g.deg_in(v, &big) as f64 >= a1 * half as f64).collect();
    // the most inward-looking vertices move first
    intra.sort_by_key(|&v| (std::cmp::Reverse(g.deg_in(v, &big)), v));
    let (u_big, u_small, w, tp, case) = if intra.len() >= excess {
        let moved: Vec<usize> = intra[..excess].to_vec();
        let mut u_big = big.clone();
        moved.iter().for_each(|&v| u_big.remove(v));
        let mut w = v0.clone();
        w.extend(&moved);
        let mut u_small = small.clone();
        w.iter().for_each(|&v| u_small.insert(v));
        let mut taken = VertexSet::from_iter(n, w.iter().copied());
        let pool = u_big.clone();
        let tp = two_paths_into(g, &w, |_| pool.clone(), &mut taken, avoid)?;
        (u_big, u_small, w, tp, 'b')
    } else {
        let mut u_big = big.clone();
        intra.iter().for_each(|&v| u_big.remove(v));
        let mut u_small = small.clone();
        v0.iter().chain(&intra).for_each(|&v| u_small.insert(v));
        let t = u_big.len() - half;
        // t disjoint 2-paths inside the long side; their middles move over
        let mut taken = VertexSet::empty(n);
        let mut inner = vec![];
        for m in u_big.iter() {
            if inner.len() == t {
                break;
            }
            if taken.contains(m) {
                continue;
            }
            let mut free = g.neighbor_set(m).intersection(&u_big).difference(&taken);
            free.remove(x);
            free.remove(y);
            let mut it = free.iter();
            if let (Some(a), Some(b)) = (it.next(), it.next()) {
                for z in [a, m, b] {
                    taken.insert(z);
                }
                inner.push((a, m, b));
            }
        }
        if inner.len() < t {
            return Err(format!("only {} of {t} disjoint 2-paths inside the long side", inner.len()));
        }
        inner.iter().for_each(|&(_, m, _)| {
            u_big.remove(m);
            u_small.insert(m);
        });
        let mut w: Vec<usize> = v0.iter().chain(&intra).copied().collect();
        w.iter().for_each(|&v| taken.insert(v));
        let pool = u_big.clone();
        let mut tp = two_paths_into(g, &w, |_| pool.clone(), &mut taken, avoid)?;
        w.extend(inner.iter().map(|&(_, m, _)| m));
        tp.extend(inner);
        (u_big, u_small, w, tp, 'c')
    };
    let (u1, u2) = if flipped { (u_small, u_big) } else { (u_big, u_small) };
    if u1.len() != half || u2.len() != half {
        return Err("scaffold is not balanced".into());
    }
    let mut w = w;
    w.sort_unstable();
    Ok(Ec1Scaffold { u1: u1.to_vec(), u2: u2.to_vec(), w, two_paths: tp, case })
}

/// Greedy vertex choices inside the scaffold. `sides[0]` is U1.
struct Picker<'a> {
    g: &'a Graph,
    sides: [VertexSet; 2],
    w: VertexSet,
    ends: VertexSet,
    used: VertexSet,
}

impl Picker<'_> {
    fn other(&self, v: usize) -> usize {
        if self.sides[0].contains(v) {
            1
        } else {
            0
        }
    }

    /// Lowest unused vertex of `cands` in side `s` passing `pred`; vertices
    /// of W are skipped unless `any`, and 2-path ends only as a last resort.
    fn take(&mut self, cands: VertexSet, s: usize, any: bool, pred: impl Fn(&Self, usize) -> bool) -> Option<usize> {
        let pool = cands.intersection(&self.sides[s]).difference(&self.used);
        let tiers: [VertexSet; 3] = [
            pool.difference(&self.w).difference(&self.ends),
            pool.difference(&self.w),
            if any { pool.clone() } else { VertexSet::empty(self.g.n()) },
        ];
        let v = tiers.iter().find_map(|t| t.iter().find(|&v| pred(self, v)))?;
        self.used.insert(v);
        Some(v)
    }

    fn nb(&mut self, v: usize, s: usize) -> Result<usize, String> {
        self.take(self.g.neighbor_set(v), s, false, |_, _| true)
            .ok_or_else(|| format!("no free neighbour of {v} in U{}", s + 1))
    }

    /// A neighbour that itself still has a free neighbour on side `then`.
    fn nb_then(&mut self, v: usize, s: usize, any: bool, then: usize) -> Result<usize, String> {
        self.take(self.g.neighbor_set(v), s, any, |p, c| {
            p.g.neighbors(c).any(|z| p.sides[then].contains(z) && !p.used.contains(z) && z != c)
        })
        .ok_or_else(|| format!("no usable neighbour of {v} in U{}", s + 1))
    }

    fn nb_any(&mut self, v: usize, s: usize) -> Result<usize, String> {
        self.take(self.g.neighbor_set(v), s, true, |_, _| true)
            .ok_or_else(|| format!("no free neighbour of {v} in U{}", s + 1))
    }

    fn common(&mut self, a: usize, b: usize, s: usize) -> Result<usize, String> {
        self.take(self.g.common_neighbors(a, b), s, false, |_, _| true)
            .ok_or_else(|| format!("no common neighbour of {a} and {b} in U{}", s + 1))
    }

    /// Ends of the 2-path through `m`, re-chosen if the original ends are gone.
    fn ends_of(&mut self, m: usize, two_paths: &[TwoPath]) -> Result<(usize, usize), String> {
        let far = self.other(m);
        if let Some(&(a, _, b)) = two_paths.iter().find(|t| t.1 == m) {
            if !self.used.contains(a) && !self.used.contains(b) {
                self.used.insert(a);
                self.used.insert(b);
                return Ok((a, b));
            }
        }
        Ok((self.nb(m, far)?, self.nb(m, far)?))
    }

    /// Strings the 2-paths of all unused W vertices with middles on side
    /// `s` into one path through common neighbours on side `s`. Both ends
    /// lie on the other side.
    fn string(&mut self, mids: &[usize], s: usize, two_paths: &[TwoPath]) -> Result<Vec<usize>, String> {
        let mut path: Vec<usize> = vec![];
        for &m in mids {
            let (a, b) = self.ends_of(m, two_paths)?;
            if let Some(&prev) = path.last() {
                let c = self.common(prev, a, s)?;
                path.push(c);
            }
            path.extend([a, m, b]);
        }
        Ok(path)
    }

    /// The path through every unused vertex of W, from its U1 end to its
    /// U2 end; a single edge when nothing is left to collect.
    fn w_path(&mut self, two_paths: &[TwoPath]) -> Result<Vec<usize>, String> {
        let rest: Vec<usize> = self.w.iter().filter(|&v| !self.used.contains(v)).collect();
        rest.iter().for_each(|&v| self.used.insert(v));
        let (m1, m2): (Vec<usize>, Vec<usize>) = rest.into_iter().partition(|&v| self.sides[0].contains(v));
        let p1 = self.string(&m1, 0, two_paths)?;
        let p2 = self.string(&m2, 1, two_paths)?;
        Ok(match (p1.is_empty(), p2.is_empty()) {
            (true, true) => {
                let a = self
                    .take(VertexSet::full(self.g.n()), 0, false, |p, c| {
                        p.g.neighbors(c).any(|z| p.sides[1].contains(z) && !p.used.contains(z))
                    })
                    .ok_or("no free edge across the scaffold")?;
                vec![a, self.nb(a, 1)?]
            }
            (false, true) => {
                // a1 … b_t lie in U2
                let u = self.nb(*p1.last().unwrap(), 0)?;
                let mut p = p1;
                p.push(u);
                p.reverse();
                p
            }
            (true, false) => {
                let v = self.nb(*p2.last().unwrap(), 1)?;
                let mut p = p2;
                p.push(v);
                p
            }
            (false, false) => {
                let bt = *p1.last().unwrap();
                let v = *p2.last().unwrap();
                let v_ = self.nb(v, 1)?;
                let u_ = self.common(v_, bt, 0)?;
                let mut p = p1;
                p.extend([u_, v_]);
                p.extend(p2.iter().rev());
                p.reverse();
                p
            }
        })
    }
}

/// Which gadget places x and y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ec1Case {
    /// n/2 odd, x and y on different sides, nothing to collect.
    OppositeBare,
    /// n/2 odd, x and y on different sides.
    Opposite,
    /// n/2 odd, same side, x has another neighbour on its side.
    SameSideSpare,
    /// n/2 odd, same side, x and y are each other's only same-side neighbour.
    SameSideTight,
    /// n/2 even, same side.
    EvenSame,
    /// n/2 even, different sides.
    EvenOpposite,
}

fn rev_tail(p: &[usize]) -> Vec<usize> {
    p.iter().rev().skip(1).copied().collect()
}

/// Lays out the gadget for `case`; x is on U1 in every case.
fn gadget(pk: &mut Picker, case: Ec1Case, x: usize, y: usize, tp: &[TwoPath]) -> Result<Frame, String> {
    let mut f = Frame::new();
    match case {
        Ec1Case::OppositeBare => {
            let (y1, y2) = (pk.nb(x, 1)?, pk.nb(x, 1)?);
            let (x1, x2) = (pk.nb(y, 0)?, pk.nb(y, 0)?);
            f.fixed(&[x]);
            f.slot(y2, x2);
            f.fixed(&[y]);
            f.slot(x1, y1);
        }
        Ec1Case::Opposite => {
            let (y2, y3) = (pk.nb(x, 1)?, pk.nb(x, 1)?);
            let (x2, x3) = (pk.nb(y, 0)?, pk.nb(y, 0)?);
            let y4 = pk.nb(x2, 1)?;
            let p = pk.w_path(tp)?;
            let (x1, y1) = (p[0], *p.last().unwrap());
            let x4 = pk.common(y1, y2, 0)?;
            f.fixed(&p[1..]).fixed(&[x4, y2, x]);
            f.slot(y3, x3);
            f.fixed(&[y, x2]);
            f.slot(y4, x1);
        }
        Ec1Case::SameSideSpare => {
            let x1 = pk.nb_any(x, 0)?;
            let y1 = pk.nb_then(x, 1, false, 1)?;
            let y2 = pk.nb_any(y1, 1)?;
            let y3 = pk.nb(x1, 1)?;
            let x3 = pk.nb(y3, 0)?;
            let x2 = pk.nb(y2, 0)?;
            let (y4, y5) = (pk.nb(y, 1)?, pk.nb(y, 1)?);
            let x4 = pk.nb(y4, 0)?;
            let p = pk.w_path(tp)?;
            let (x5, y6) = (p[0], *p.last().unwrap());
            let y7 = pk.common(x2, x5, 1)?;
            f.fixed(&rev_tail(&p)).fixed(&[y7, x2, y2, y1, x, x1, y3]);
            f.slot(x3, y5);
            f.fixed(&[y, y4]);
            f.slot(x4, y6);
        }
        Ec1Case::SameSideTight => {
            let y1 = pk.nb_then(x, 1, false, 1)?;
            let y2 = pk.nb_any(y1, 1)?;
            let y3 = pk.nb(x, 1)?;
            let x1 = pk.take(pk.g.neighbor_set(y3), 0, false, |p, c| {
                p.g.neighbors(c).any(|z| p.sides[0].contains(z) && !p.used.contains(z))
            });
            let x1 = x1.ok_or_else(|| format!("no neighbour of {y3} with a free same-side neighbour"))?;
            let x2 = pk.nb_any(x1, 0)?;
            let x3 = pk.nb(y2, 0)?;
            let y4 = pk.nb(x2, 1)?;
            let x4 = pk.nb(y4, 0)?;
            let p = pk.w_path(tp)?;
            let (x5, y5) = (p[0], *p.last().unwrap());
            let (y6, y7) = (pk.nb(y, 1)?, pk.nb(y, 1)?);
            let x6 = pk.nb(y6, 0)?;
            let y8 = pk.common(x3, x5, 1)?;
            f.fixed(&rev_tail(&p)).fixed(&[y8, x3, y2, y1, x, y3, x1, x2, y4]);
            f.slot(x4, y7);
            f.fixed(&[y, y6]);
            f.slot(x6, y5);
        }
        Ec1Case::EvenSame => {
            let (y2, y3) = (pk.nb(x, 1)?, pk.nb(x, 1)?);
            let x3 = pk.nb(y3, 0)?;
            let (ya, yb) = (pk.nb(y, 1)?, pk.nb(y, 1)?);
            let p = pk.w_path(tp)?;
            let (x1, y1) = (p[0], *p.last().unwrap());
            let x4 = pk.common(y1, y2, 0)?;
            f.fixed(&p[1..]).fixed(&[x4, y2, x, y3]);
            f.slot(x3, yb);
            f.fixed(&[y]);
            f.slot(ya, x1);
        }
        Ec1Case::EvenOpposite => {
            let x1 = pk.nb_any(x, 0)?;
            let y1 = pk.nb_then(x, 1, false, 1)?;
            let y2 = pk.nb_any(y1, 1)?;
            let y3 = pk.nb(x1, 1)?;
            let x2 = pk.nb(y2, 0)?;
            let (xa, xb) = (pk.nb(y, 0)?, pk.nb(y, 0)?);
            let p = pk.w_path(tp)?;
            let (x5, y6) = (p[0], *p.last().unwrap());
            let y7 = pk.common(x2, x5, 1)?;
            f.fixed(&rev_tail(&p)).fixed(&[y7, x2, y2, y1, x, x1]);
            f.slot(y3, xa);
            f.fixed(&[y]);
            f.slot(xb, y6);
        }
    }
    Ok(f)
}

/// Solves for a graph whose bipartition `(v1, v2)` has an almost complete
/// cut. `n` must be even.
pub fn solve_ec1(
    g: &Graph,
    x: usize,
    y: usize,
    v1: &[usize],
    v2: &[usize],
    params: &Params,
    seed: u64,
) -> Result<Construction, SolverError> {
    let n = g.n();
    if n % 2 == 1 || n < 8 || x == y || x >= n || y >= n {
        return Err(fail("input", format!("needs even n ≥ 8 and distinct x, y (n = {n})")));
    }
    params.validate_extremal().map_err(|e| fail("input", e))?;
    let mut stages = Stages::start();
    let sc = ec1_scaffold(g, v1, v2, params, x, y).map_err(|e| fail("scaffold", e))?;
    stages.mark("scaffold");

    let mut u1 = VertexSet::from_iter(n, sc.u1.iter().copied());
    let mut u2 = VertexSet::from_iter(n, sc.u2.iter().copied());
    if !u1.contains(x) {
        std::mem::swap(&mut u1, &mut u2);
    }
    let same = u1.contains(y);
    let odd_half = (n / 2) % 2 == 1;
    let (mut x, mut y) = (x, y);
    let spare = |a: usize, b: usize| g.neighbors(a).any(|z| u1.contains(z) && z != b);
    let mut w = VertexSet::from_iter(n, sc.w.iter().copied());
    w.remove(x);
    w.remove(y);
    let case = match (odd_half, same) {
        (true, false) if w.is_empty() => Ec1Case::OppositeBare,
        (true, false) => Ec1Case::Opposite,
        (true, true) if spare(x, y) => Ec1Case::SameSideSpare,
        (true, true) if spare(y, x) => {
            std::mem::swap(&mut x, &mut y);
            Ec1Case::SameSideSpare
        }
        (true, true) => Ec1Case::SameSideTight,
        (false, true) => Ec1Case::EvenSame,
        (false, false) => Ec1Case::EvenOpposite,
    };
    let mut pk = Picker {
        g,
        sides: [u1.clone(), u2.clone()],
        w,
        ends: VertexSet::from_iter(n, sc.two_paths.iter().flat_map(|&(a, _, b)| [a, b])),
        used: VertexSet::from_iter(n, [x, y]),
    };
    let frame = gadget(&mut pk, case, x, y, &sc.two_paths).map_err(|e| fail("gadget", e))?;
    stages.mark("gadget");

    let mut fixed = VertexSet::empty(n);
    for p in &frame.pieces {
        if let Piece::Fixed(v) = *p {
            fixed.insert(v);
        }
    }
    let rest1 = u1.difference(&fixed);
    let rest2 = u2.difference(&fixed);
    if rest1.len() != rest2.len() {
        return Err(fail("gadget", format!("pair sides differ: {} vs {}", rest1.len(), rest2.len())));
    }
    let (arc, other) = (frame.arc(x, y), frame.arc(y, x));
    let (between, slot) = match (arc, other) {
        (Some((f, s)), _) if s.len() == 1 => (f, s[0]),
        (_, Some((f, s))) if s.len() == 1 => (f, s[0]),
        _ => return Err(fail("lengths", "no arc between x and y holds exactly one slot")),
    };
    let big_n = rest1.len();
    let l_main = (n / 2 - 1)
        .checked_sub(between)
        .ok_or_else(|| fail("lengths", "gadget too long for the target distance"))?;
    let l_other = (2 * big_n)
        .checked_sub(l_main)
        .ok_or_else(|| fail("lengths", format!("pair of side {big_n} cannot host {l_main} vertices")))?;
    let mut lens = [0; 2];
    lens[slot] = l_main;
    lens[1 - slot] = l_other;
    stages.mark("lengths");

    let ends = |s: usize| {
        let (a, b) = frame.slots[s];
        if rest1.contains(a) {
            (a, b)
        } else {
            (b, a)
        }
    };
    let ((x1, y1), (x2, y2)) = (ends(0), ends(1));
    let req = TwoPathRequest { x: rest1.to_vec(), y: rest2.to_vec(), x1, y1, x2, y2, l1: lens[0], l2: lens[1] };
    let (p1, p2) = embed_two_paths(g, &req, seed).map_err(|e| fail("embedding", e))?;
    stages.mark("embedding");

    let order = frame.assemble(&[p1, p2]).map_err(|e| fail("assembly", e))?;
    if !is_ham_cycle(g, &order) || cycle_distance(&order, x, y) != Ok(n / 2) {
        return Err(fail("assembly", "assembled order is not a valid certificate"));
    }
    stages.mark("assembly");
    let notes = json!({
        "scaffold_case": sc.case.to_string(),
        "w": sc.w.len(),
        "case": case,
        "pair_side": big_n,
        "lengths": lens,
    });
    Ok(Construction { order, stages: stages.finish(), notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{verify_certificate, CycleCertificate};
    use crate::harness::gen_ec1;

    fn halves(n: usize) -> (Vec<usize>, Vec<usize>) {
        ((0..n / 2).collect(), (n / 2..n).collect())
    }

    fn check(g: &Graph, x: usize, y: usize, expect: Ec1Case) {
        let n = g.n();
        let (v1, v2) = halves(n);
        let c = solve_ec1(g, x, y, &v1, &v2, &Params::default(), 3).unwrap();
        assert_eq!(c.notes["case"], json!(expect));
        let cert = CycleCertificate::from_order(c.order, x, y).unwrap();
        assert!(verify_certificate(g, &cert, n / 2).is_accept());
    }

    #[test]
    fn every_gadget() {
        // n/2 = 100 is even, n/2 = 101 odd
        let even = gen_ec1(200, 0.02, 1).unwrap();
        let odd = gen_ec1(202, 0.02, 1).unwrap();
        check(&even, 3, 150, Ec1Case::EvenOpposite);
        check(&even, 3, 50, Ec1Case::EvenSame);
        check(&odd, 3, 150, Ec1Case::OppositeBare);
        check(&odd, 3, 50, Ec1Case::SameSideSpare);
    }

    #[test]
    fn tight_same_side() {
        // K_{m,m} plus the single edge 0–1 inside U1 and a perfect matching
        // elsewhere: 0 and 1 only see each other on their side
        let m = 51;
        let mut b = crate::graph::GraphBuilder::new(2 * m);
        for i in 0..m {
            for j in m..2 * m {
                b.add_edge(i, j);
            }
        }
        b.add_edge(0, 1);
        for i in (2..m - 1).step_by(2) {
            b.add_edge(i, i + 1);
        }
        b.add_edge(m - 1, 2);
        for i in (m..2 * m - 1).step_by(2) {
            b.add_edge(i, i + 1);
        }
        b.add_edge(2 * m - 1, m);
        let g = b.build();
        assert!(g.min_degree() > m);
        check(&g, 0, 1, Ec1Case::SameSideTight);
    }

    #[test]
    fn scaffold_collects_low_degree_vertices() {
        let g = gen_ec1(300, 0.02, 4).unwrap();
        let (v1, v2) = halves(300);
        let s = ec1_scaffold(&g, &v1, &v2, &Params::default(), 0, 1).unwrap();
        assert!(scaffold_degree_ok(&g, &s, &Params::default()));
        assert_eq!(s.u1.len(), 150);
    }
}
