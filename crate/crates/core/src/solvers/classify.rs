//! Extremal-case detection: balanced bipartitions whose cut is almost
//! complete (EC1) or almost empty (EC2).

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::graph::{Density, Graph, VertexSet};
use crate::seeds;

/// Orders up to which every balanced bipartition is examined.
pub const EXACT_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    NonExtremal,
    Ec1 { v1: Vec<usize>, v2: Vec<usize> },
    Ec2 { v1: Vec<usize>, v2: Vec<usize> },
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::NonExtremal => "non_extremal",
            Classification::Ec1 { .. } => "ec1",
            Classification::Ec2 { .. } => "ec2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bisection {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub cut: Density,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub verdict: Classification,
    pub exact: bool,
    /// Densest and sparsest balanced cuts found.
    pub max_cut: Bisection,
    pub min_cut: Bisection,
}

fn bisection(g: &Graph, side: &[bool]) -> Bisection {
    let n = g.n();
    let v1: Vec<usize> = (0..n).filter(|&v| !side[v]).collect();
    let v2: Vec<usize> = (0..n).filter(|&v| side[v]).collect();
    let s2 = VertexSet::from_iter(n, v2.iter().copied());
    let edges: u64 = v1.iter().map(|&v| g.deg_in(v, &s2) as u64).sum();
    Bisection { cut: Density::new(edges, (v1.len() * v2.len()) as u64), v1, v2 }
}

fn exact_extremes(g: &Graph) -> (Vec<bool>, Vec<bool>) {
    let n = g.n();
    let adj: Vec<u32> = (0..n).map(|v| g.row(v)[0] as u32).collect();
    let all = (1u32 << n) - 1;
    let first = (1u32 << (n / 2)) - 1;
    let (mut best_max, mut best_min) = ((0u32, first), (u32::MAX, first));
    // masks containing vertex 0 with n/2 members
    for mask in 0..=all {
        if mask & 1 == 0 || mask.count_ones() as usize != n / 2 {
            continue;
        }
        let mut cut = 0;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            cut += (adj[v] & !mask & all).count_ones();
            m &= m - 1;
        }
        if cut > best_max.0 {
            best_max = (cut, mask);
        }
        if cut < best_min.0 {
            best_min = (cut, mask);
        }
    }
    let sides = |mask: u32| (0..n).map(|v| mask >> v & 1 == 0).collect::<Vec<bool>>();
    (sides(best_max.1), sides(best_min.1))
}

fn normalise(v: &mut [f64]) {
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt().max(1e-300);
    v.iter_mut().for_each(|a| *a /= norm);
}

fn matvec(g: &Graph, v: &[f64], shift: f64, out: &mut [f64]) {
    for (u, o) in out.iter_mut().enumerate() {
        *o = shift * v[u] + g.neighbors(u).map(|w| v[w]).sum::<f64>();
    }
}

/// Balanced split by the median of a spectral vector: the eigenvector of the
/// smallest adjacency eigenvalue for dense cuts, of the second largest for
/// sparse ones.
fn spectral_seed(g: &Graph, dense_cut: bool, seed: u64) -> Vec<bool> {
    let n = g.n();
    let dmax = g.max_degree() as f64;
    let mut rng = seeds::rng_for(seed, "spectral", dense_cut as u64);
    let start = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut v: Vec<f64> = (0..n).map(|_| rand::Rng::gen_range(rng, -1.0..1.0)).collect();
        normalise(&mut v);
        v
    };
    let iters = 60;
    let mut tmp = vec![0.0; n];
    let vec = if dense_cut {
        // top eigenvector of dmax·I − A
        let mut v = start(&mut rng);
        for _ in 0..iters {
            matvec(g, &v, 0.0, &mut tmp);
            for i in 0..n {
                v[i] = dmax * v[i] - tmp[i];
            }
            normalise(&mut v);
        }
        v
    } else {
        let mut top = start(&mut rng);
        for _ in 0..iters {
            matvec(g, &top, dmax, &mut tmp);
            std::mem::swap(&mut top, &mut tmp);
            normalise(&mut top);
        }
        let mut v = start(&mut rng);
        for _ in 0..iters {
            let dot: f64 = v.iter().zip(&top).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(&top).for_each(|(a, b)| *a -= dot * b);
            matvec(g, &v, dmax, &mut tmp);
            std::mem::swap(&mut v, &mut tmp);
            normalise(&mut v);
        }
        v
    };
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| vec[a].total_cmp(&vec[b]).then(a.cmp(&b)));
    let mut side = vec![false; n];
    for &v in &idx[n / 2..] {
        side[v] = true;
    }
    side
}

/// Pairwise swap search. `sign = 1` grows the cut, `-1` shrinks it.
fn local_swaps(g: &Graph, side: &mut [bool], sign: i64) {
    let n = g.n();
    let s2 = VertexSet::from_iter(n, (0..n).filter(|&v| side[v]));
    // gain[v] = (own-side degree − other-side degree)
    let mut gain: Vec<i64> = (0..n)
        .map(|v| {
            let d2 = g.deg_in(v, &s2) as i64;
            let d = g.degree(v) as i64;
            if side[v] { d2 - (d - d2) } else { (d - d2) - d2 }
        })
        .collect();
    let flip = |side: &mut [bool], gain: &mut [i64], u: usize| {
        for w in g.neighbors(u) {
            gain[w] += if side[w] == side[u] { -2 } else { 2 };
        }
        gain[u] = -gain[u];
        side[u] = !side[u];
    };
    const TOP: usize = 6;
    for _ in 0..n {
        let best_of = |want: bool| {
            let mut c: Vec<usize> = (0..n).filter(|&v| side[v] == want).collect();
            let k = TOP.min(c.len()) - 1;
            c.select_nth_unstable_by_key(k, |&v| std::cmp::Reverse(sign * gain[v]));
            c.truncate(TOP);
            c
        };
        let (a, b) = (best_of(false), best_of(true));
        let mut best = (0i64, usize::MAX, usize::MAX);
        for &u in &a {
            for &v in &b {
                let adj = g.has_edge(u, v) as i64;
                let delta = sign * (gain[u] + gain[v] + 2 * adj);
                if delta > best.0 {
                    best = (delta, u, v);
                }
            }
        }
        if best.0 <= 0 {
            break;
        }
        flip(side, &mut gain, best.1);
        flip(side, &mut gain, best.2);
    }
}

fn heuristic_extreme(g: &Graph, sign: i64, effort: usize, seed: u64, stop: impl Fn(&Density) -> bool) -> Bisection {
    let n = g.n();
    let mut rng = seeds::rng_for(seed, "classify", sign as u64);
    let mut best: Option<Bisection> = None;
    for restart in 0..effort.max(1) {
        let mut side = if restart == 0 {
            spectral_seed(g, sign > 0, seed)
        } else {
            let mut s: Vec<bool> = (0..n).map(|v| v >= n / 2).collect();
            s.shuffle(&mut rng);
            s
        };
        local_swaps(g, &mut side, sign);
        let b = bisection(g, &side);
        let better = match &best {
            None => true,
            Some(old) => (b.cut.value() - old.cut.value()) * sign as f64 > 0.0,
        };
        if better {
            best = Some(b);
        }
        if stop(&best.as_ref().unwrap().cut) {
            break;
        }
    }
    best.unwrap()
}

/// Searches balanced bipartitions for a cut density `≥ 1 − alpha` (EC1) or
/// `≤ alpha` (EC2). Exact for `n ≤ 16`; otherwise a spectral split plus
/// `effort − 1` random starts, each improved by pairwise swaps.
pub fn classify_detailed(g: &Graph, alpha: f64, effort: usize, seed: u64) -> ClassifyReport {
    let n = g.n();
    assert!(n >= 2 && n.is_multiple_of(2), "classification needs even n");
    let ec1 = |d: &Density| d.value() >= 1.0 - alpha;
    let ec2 = |d: &Density| d.value() <= alpha;
    let exact = n <= EXACT_MAX_N;
    let (max_cut, min_cut) = if exact {
        let (a, b) = exact_extremes(g);
        (bisection(g, &a), bisection(g, &b))
    } else {
        (heuristic_extreme(g, 1, effort, seed, ec1), heuristic_extreme(g, -1, effort, seed, ec2))
    };
    let verdict = if ec1(&max_cut.cut) {
        Classification::Ec1 { v1: max_cut.v1.clone(), v2: max_cut.v2.clone() }
    } else if ec2(&min_cut.cut) {
        Classification::Ec2 { v1: min_cut.v1.clone(), v2: min_cut.v2.clone() }
    } else {
        Classification::NonExtremal
    };
    ClassifyReport { verdict, exact, max_cut, min_cut }
}

pub fn classify(g: &Graph, alpha: f64, effort: usize, seed: u64) -> Classification {
    classify_detailed(g, alpha, effort, seed).verdict
}
