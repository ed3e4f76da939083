//! Instance generators. Every generator checks its degree claim before
//! returning.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphBuilder};
use crate::seeds;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("{family} needs {parity} n, got {n}")]
    Parity { family: &'static str, parity: &'static str, n: usize },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

/// `n/2 + 1` rounded up, the degree every Dirac-type family must reach.
pub fn dirac_bound(n: usize) -> usize {
    (n + 3) / 2
}

/// K_{n/2,n/2}: minimum degree exactly n/2.
pub fn gen_sharpness_bipartite(n: usize) -> Result<Graph, GenError> {
    if !n.is_multiple_of(2) || n < 2 {
        return Err(GenError::Parity { family: "sharpness-bipartite", parity: "even", n });
    }
    let m = n / 2;
    let mut b = GraphBuilder::new(n);
    for u in 0..m {
        for v in m..n {
            b.add_edge(u, v);
        }
    }
    let g = b.build();
    assert_eq!(g.min_degree(), m);
    Ok(g)
}

/// Two cliques on `(n−3)/2` vertices each, both joined completely to a
/// triangle. Vertices `0..h` and `h..2h` are the cliques, the last three the
/// triangle.
pub fn gen_sharpness_split(n: usize) -> Result<Graph, GenError> {
    if n.is_multiple_of(2) || n < 5 {
        return Err(GenError::Parity { family: "sharpness-split", parity: "odd", n });
    }
    let h = (n - 3) / 2;
    let block = |v: usize| if v < h { 0 } else if v < 2 * h { 1 } else { 2 };
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if block(u) == block(v) || block(u) == 2 || block(v) == 2 {
                b.add_edge(u, v);
            }
        }
    }
    let g = b.build();
    assert_eq!(g.min_degree(), n.div_ceil(2));
    Ok(g)
}

/// Adds edges at `v` towards shuffled candidates, lowest degree first, until
/// `deg(v) ≥ target`.
fn top_up(b: &mut GraphBuilder, v: usize, target: usize, pool: &[usize], rng: &mut ChaCha8Rng) {
    if b.degree(v) >= target {
        return;
    }
    let mut cand: Vec<usize> = pool.iter().copied().filter(|&u| u != v && !b.has_edge(u, v)).collect();
    cand.shuffle(rng);
    cand.sort_by_key(|&u| b.degree(u));
    for u in cand {
        if b.degree(v) >= target {
            break;
        }
        b.add_edge(u, v);
    }
}

/// G(n, 1/2) repaired so that δ ≥ ⌈n/2⌉ + 1 + surplus.
pub fn gen_random_dirac(n: usize, surplus: usize, seed: u64) -> Result<Graph, GenError> {
    let target = dirac_bound(n) + surplus;
    if n < 3 || target >= n {
        return Err(GenError::Infeasible(format!("degree {target} on {n} vertices")));
    }
    let mut rng = seeds::rng_for(seed, "gen-random-dirac", n as u64);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                b.add_edge(u, v);
            }
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let mut order = all.clone();
    order.shuffle(&mut rng);
    for v in order {
        top_up(&mut b, v, target, &all, &mut rng);
    }
    let g = b.build();
    assert!(g.min_degree() >= target);
    Ok(g)
}

/// K_{n/2,n/2} with a perfect (or near-perfect) matching inside each side,
/// each cross edge deleted with probability `noise`, and deficits repaired
/// with extra edges inside the sides. Sides are `0..n/2` and `n/2..n`.
pub fn gen_ec1(n: usize, noise: f64, seed: u64) -> Result<Graph, GenError> {
    if !n.is_multiple_of(2) || n < 8 {
        return Err(GenError::Parity { family: "ec1", parity: "even (≥ 8)", n });
    }
    if !(0.0..0.5).contains(&noise) {
        return Err(GenError::Infeasible(format!("noise {noise} outside [0, 0.5)")));
    }
    let m = n / 2;
    let mut rng = seeds::rng_for(seed, "gen-ec1", n as u64);
    let mut b = GraphBuilder::new(n);
    for u in 0..m {
        for v in m..n {
            if !rng.gen_bool(noise) {
                b.add_edge(u, v);
            }
        }
    }
    for side in [0, m] {
        for i in (0..m - 1).step_by(2) {
            b.add_edge(side + i, side + i + 1);
        }
        if m % 2 == 1 {
            b.add_edge(side + m - 1, side);
        }
    }
    let target = dirac_bound(n);
    let sides: [Vec<usize>; 2] = [(0..m).collect(), (m..n).collect()];
    for v in 0..n {
        top_up(&mut b, v, target, &sides[v / m], &mut rng);
    }
    let g = b.build();
    assert!(g.min_degree() >= target);
    Ok(g)
}

/// Two cliques on `0..n/2` and `n/2..n`, each cross edge present with
/// probability `cut_density`, and every vertex topped up to at least two
/// cross neighbours so that δ ≥ n/2 + 1.
pub fn gen_ec2(n: usize, cut_density: f64, seed: u64) -> Result<Graph, GenError> {
    if !n.is_multiple_of(2) || n < 8 {
        return Err(GenError::Parity { family: "ec2", parity: "even (≥ 8)", n });
    }
    if !(0.0..0.5).contains(&cut_density) {
        return Err(GenError::Infeasible(format!("cut density {cut_density} outside [0, 0.5)")));
    }
    let m = n / 2;
    let mut rng = seeds::rng_for(seed, "gen-ec2", n as u64);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let same = (u < m) == (v < m);
            if same || rng.gen_bool(cut_density) {
                b.add_edge(u, v);
            }
        }
    }
    let target = dirac_bound(n);
    let sides: [Vec<usize>; 2] = [(m..n).collect(), (0..m).collect()];
    for v in 0..n {
        top_up(&mut b, v, target, &sides[v / m], &mut rng);
    }
    let g = b.build();
    assert!(g.min_degree() >= target);
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SharpnessBipartite,
    SharpnessSplit,
    RandomDirac,
    Ec1Family,
    Ec2Family,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::SharpnessBipartite, Family::SharpnessSplit, Family::RandomDirac, Family::Ec1Family, Family::Ec2Family];

    pub fn name(self) -> &'static str {
        match self {
            Family::SharpnessBipartite => "sharpness-bipartite",
            Family::SharpnessSplit => "sharpness-split",
            Family::RandomDirac => "random-dirac",
            Family::Ec1Family => "ec1-family",
            Family::Ec2Family => "ec2-family",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s || f.name().trim_end_matches("-family") == s)
    }
}

/// A generated instance: family, order, seed and the family's knob
/// (surplus for random-dirac, noise for EC1, cut density for EC2).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    #[serde(default)]
    pub surplus: usize,
    #[serde(default = "default_noise")]
    pub noise: f64,
}

fn default_noise() -> f64 {
    0.02
}

impl InstanceSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        InstanceSpec { family, n, seed, surplus: 0, noise: default_noise() }
    }

    pub fn generate(&self) -> Result<Graph, GenError> {
        match self.family {
            Family::SharpnessBipartite => gen_sharpness_bipartite(self.n),
            Family::SharpnessSplit => gen_sharpness_split(self.n),
            Family::RandomDirac => gen_random_dirac(self.n, self.surplus, self.seed),
            Family::Ec1Family => gen_ec1(self.n, self.noise, self.seed),
            Family::Ec2Family => gen_ec2(self.n, self.noise, self.seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharpness_families() {
        let g = gen_sharpness_bipartite(12).unwrap();
        assert_eq!((g.edge_count(), g.min_degree(), g.max_degree()), (36, 6, 6));
        let g = gen_sharpness_split(11).unwrap();
        assert_eq!(g.min_degree(), 6);
        // two K4's, a triangle, and the 2·4·3 join edges
        assert_eq!(g.edge_count(), 6 + 6 + 3 + 24);
        assert!(gen_sharpness_bipartite(7).is_err() && gen_sharpness_split(8).is_err());
    }

    #[test]
    fn random_families_meet_their_bounds() {
        for seed in 0..3 {
            assert!(gen_random_dirac(60, 0, seed).unwrap().min_degree() >= 31);
            assert!(gen_random_dirac(61, 2, seed).unwrap().min_degree() >= 34);
            assert!(gen_ec1(40, 0.05, seed).unwrap().min_degree() >= 21);
            assert!(gen_ec1(42, 0.05, seed).unwrap().min_degree() >= 22);
            assert!(gen_ec2(40, 0.02, seed).unwrap().min_degree() >= 21);
        }
        assert_eq!(gen_random_dirac(50, 3, 9).unwrap(), gen_random_dirac(50, 3, 9).unwrap());
        assert!(gen_random_dirac(10, 5, 0).is_err());
        assert!(gen_ec1(40, 0.7, 0).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(Family::parse(f.name()), Some(f));
        }
        assert_eq!(Family::parse("ec1"), Some(Family::Ec1Family));
        assert_eq!(Family::parse("nope"), None);
    }
}
