//! ε-regularity of a single pair, decided exactly on small parts or refuted by
//! sampling on large ones.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Density, Graph, GraphError, VertexSet};

/// Largest part size accepted by the exhaustive mode.
pub const EXHAUSTIVE_MAX: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularityMode {
    Exhaustive,
    /// One-sided: a reported irregularity is real, a pass is only evidence.
    Sampled { k_trials: usize, subset_fraction: f64, seed: u64 },
}

impl RegularityMode {
    pub fn sampled(seed: u64) -> Self {
        RegularityMode::Sampled { k_trials: 200, subset_fraction: 0.5, seed }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PairError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("parts need at least 2 vertices")]
    TooSmall,
    #[error("exhaustive mode needs parts of at most {EXHAUSTIVE_MAX} vertices, got {0}")]
    TooLargeForExhaustive(usize),
    #[error("slice fraction {fraction} must exceed eps {eps} and be met by both slices")]
    BadSlice { fraction: f64, eps: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub regular: bool,
    /// A pair `(A, B)` with `|A| > ε|X|`, `|B| > ε|Y|` and deviation at least ε.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    pub observed_density: Density,
    /// Largest `|d(A,B) − d(X,Y)|` seen over the tested subset pairs.
    pub worst_deviation: f64,
}

fn deviation(e: u64, a: usize, b: usize, whole: &Density) -> f64 {
    (e as f64 / (a * b) as f64 - whole.value()).abs()
}

fn check_parts(x: &VertexSet, y: &VertexSet) -> Result<(), PairError> {
    if x.len() < 2 || y.len() < 2 {
        return Err(PairError::TooSmall);
    }
    if !x.is_disjoint(y) {
        return Err(GraphError::Overlap.into());
    }
    Ok(())
}

pub fn is_epsilon_regular(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    eps: f64,
    mode: RegularityMode,
) -> Result<PairVerdict, PairError> {
    check_parts(x, y)?;
    let whole = g.density(x, y)?;
    match mode {
        RegularityMode::Exhaustive => exhaustive(g, x, y, eps, whole),
        RegularityMode::Sampled { k_trials, subset_fraction, seed } => {
            Ok(sampled(g, x, y, eps, whole, k_trials, subset_fraction, seed))
        }
    }
}

fn exhaustive(g: &Graph, x: &VertexSet, y: &VertexSet, eps: f64, whole: Density) -> Result<PairVerdict, PairError> {
    let xs = x.to_vec();
    let ys = y.to_vec();
    let big = xs.len().max(ys.len());
    if big > EXHAUSTIVE_MAX {
        return Err(PairError::TooLargeForExhaustive(big));
    }
    // neighbourhood of each y inside X, as a mask over positions in xs
    let ymask: Vec<u32> = ys
        .iter()
        .map(|&v| xs.iter().enumerate().filter(|&(_, &u)| g.has_edge(u, v)).fold(0, |m, (i, _)| m | 1 << i))
        .collect();
    let (nx, ny) = (xs.len(), ys.len());
    let mut worst = 0.0f64;
    let mut witness: Option<(u32, Vec<usize>, f64)> = None;
    let mut order: Vec<(u32, usize)> = Vec::with_capacity(ny);
    for mask in 1u32..(1 << nx) {
        let a = mask.count_ones() as usize;
        if a as f64 <= eps * nx as f64 {
            continue;
        }
        order.clear();
        order.extend(ymask.iter().enumerate().map(|(j, &m)| ((m & mask).count_ones(), j)));
        order.sort_unstable_by(|p, q| q.cmp(p));
        let (mut hi, mut lo) = (0u64, 0u64);
        for b in 1..=ny {
            hi += order[b - 1].0 as u64;
            lo += order[ny - b].0 as u64;
            if b as f64 <= eps * ny as f64 {
                continue;
            }
            let pairs = (a * b) as u64;
            for (e, top) in [(hi, true), (lo, false)] {
                let dev = deviation(e, a, b, &whole);
                worst = worst.max(dev);
                if !Density::new(e, pairs).deviation_below(&whole, eps) && witness.as_ref().is_none_or(|w| dev > w.2) {
                    let bset = if top { order[..b].iter() } else { order[ny - b..].iter() };
                    witness = Some((mask, bset.map(|&(_, j)| ys[j]).collect(), dev));
                }
            }
        }
    }
    let witness = witness.map(|(mask, mut b, _)| {
        b.sort_unstable();
        ((0..nx).filter(|i| mask >> i & 1 == 1).map(|i| xs[i]).collect(), b)
    });
    Ok(PairVerdict { regular: witness.is_none(), witness, observed_density: whole, worst_deviation: worst })
}

#[allow(clippy::too_many_arguments)]
fn sampled(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    eps: f64,
    whole: Density,
    k: usize,
    frac: f64,
    seed: u64,
) -> PairVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = x.to_vec();
    let ys = y.to_vec();
    let small = |m: usize| ((eps * m as f64).ceil() as usize + 1).min(m);
    let large = |m: usize| ((frac * m as f64).ceil() as usize).clamp(small(m), m);
    let n = g.n();
    let mut worst = 0.0f64;
    let mut witness = None;
    let mut consider = |a: Vec<usize>, b: Vec<usize>, worst: &mut f64| {
        if a.len() as f64 <= eps * xs.len() as f64 || b.len() as f64 <= eps * ys.len() as f64 {
            return;
        }
        let bset = VertexSet::from_iter(n, b.iter().copied());
        let e: u64 = a.iter().map(|&u| g.deg_in(u, &bset) as u64).sum();
        let dev = deviation(e, a.len(), b.len(), &whole);
        if dev > *worst {
            *worst = dev;
            if !Density::new(e, (a.len() * b.len()) as u64).deviation_below(&whole, eps) {
                witness = Some((a, b));
            }
        }
    };
    for trial in 0..k {
        match trial % 3 {
            0 | 1 => {
                let (sa, sb) = if trial % 3 == 0 {
                    (small(xs.len()), small(ys.len()))
                } else {
                    (large(xs.len()), large(ys.len()))
                };
                let a = xs.choose_multiple(&mut rng, sa).copied().collect();
                let b = ys.choose_multiple(&mut rng, sb).copied().collect();
                consider(a, b, &mut worst);
            }
            _ => {
                // structured probe: B = N(x0) ∩ Y or its complement, A = the
                // vertices of X with the most (or fewest) neighbours in B
                let x0 = xs[rng.gen_range(0..xs.len())];
                let nb = g.neighbor_set(x0).intersection(y);
                let b: Vec<usize> = if rng.gen_bool(0.5) { nb.to_vec() } else { y.difference(&nb).to_vec() };
                if b.is_empty() {
                    continue;
                }
                let bset = VertexSet::from_iter(n, b.iter().copied());
                let mut keyed: Vec<(usize, usize)> = xs.iter().map(|&u| (g.deg_in(u, &bset), u)).collect();
                keyed.sort_unstable();
                let size = if rng.gen_bool(0.5) { small(xs.len()) } else { large(xs.len()) };
                let a: Vec<usize> = if rng.gen_bool(0.5) {
                    keyed[keyed.len() - size..].iter().map(|&(_, u)| u).collect()
                } else {
                    keyed[..size].iter().map(|&(_, u)| u).collect()
                };
                consider(a, b, &mut worst);
            }
        }
    }
    let witness = witness.map(|(mut a, mut b): (Vec<usize>, Vec<usize>)| {
        a.sort_unstable();
        b.sort_unstable();
        (a, b)
    });
    PairVerdict { regular: witness.is_none(), witness, observed_density: whole, worst_deviation: worst }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperVerdict {
    pub pair: PairVerdict,
    pub min_degree_ok: bool,
    pub super_regular: bool,
}

/// ε-regularity in the given mode, plus the exact minimum-degree conditions
/// `deg_Y(x) > δ|Y|` and `deg_X(y) > δ|X|`.
pub fn is_super_regular(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    eps: f64,
    delta: f64,
    mode: RegularityMode,
) -> Result<SuperVerdict, PairError> {
    let pair = is_epsilon_regular(g, x, y, eps, mode)?;
    let side_ok = |from: &VertexSet, to: &VertexSet| from.iter().all(|v| g.deg_in(v, to) as f64 > delta * to.len() as f64);
    let min_degree_ok = side_ok(x, y) && side_ok(y, x);
    let super_regular = pair.regular && min_degree_ok;
    Ok(SuperVerdict { pair, min_degree_ok, super_regular })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceReport {
    pub eps_prime: f64,
    pub density: Density,
    pub sliced_density: Density,
    /// `|d(X′,Y′) − d(X,Y)| < eps` on these inputs.
    pub within_eps: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn slice_pair(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    x_sub: &VertexSet,
    y_sub: &VertexSet,
    alpha_fraction: f64,
    eps: f64,
) -> Result<SliceReport, PairError> {
    check_parts(x, y)?;
    let bad = PairError::BadSlice { fraction: alpha_fraction, eps };
    if alpha_fraction <= eps || alpha_fraction > 1.0 {
        return Err(bad);
    }
    if !x_sub.difference(x).is_empty() || !y_sub.difference(y).is_empty() {
        return Err(bad);
    }
    if (x_sub.len() as f64) < alpha_fraction * x.len() as f64 || (y_sub.len() as f64) < alpha_fraction * y.len() as f64 {
        return Err(bad);
    }
    let density = g.density(x, y)?;
    let sliced_density = g.density(x_sub, y_sub)?;
    Ok(SliceReport {
        eps_prime: (eps / alpha_fraction).max(2.0 * eps),
        density,
        sliced_density,
        within_eps: sliced_density.deviation_below(&density, eps),
    })
}
