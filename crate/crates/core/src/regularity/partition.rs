//! A practical partitioner meeting the degree-form contract on quasi-random
//! inputs: random equitable clusters, sampled pair verdicts, re-randomise on
//! failure.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::pair::{is_epsilon_regular, RegularityMode};
use super::{Params, ParamsError};
use crate::graph::{Density, Graph, GraphBuilder, VertexSet};
use crate::seeds;

const MAX_ATTEMPTS: u64 = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PartitionError {
    #[error("graph with {n} vertices is too small for {m0} clusters")]
    TooSmall { n: usize, m0: usize },
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error("no partition met the contract after {attempts} attempts: {last}")]
    ContractFailed { attempts: u64, last: String },
    #[error("partition dump does not fit the graph: {0}")]
    BadDump(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub i: usize,
    pub j: usize,
    /// Density in the input graph.
    pub density: Density,
    pub regular: bool,
    pub worst_deviation: f64,
    /// Regular with density above `d`, so its edges survive into G′.
    pub kept: bool,
}

#[derive(Debug, Clone)]
pub struct RegularityPartition {
    pub v0: VertexSet,
    pub clusters: Vec<VertexSet>,
    pub cluster_size: usize,
    pub cluster_of: Vec<Option<usize>>,
    pub pairs: Vec<PairRecord>,
    pub pruned: Graph,
    pub params: Params,
    pub seed: u64,
    /// Whether a cluster was folded into V₀ to make `l` even.
    pub evened: bool,
}

impl RegularityPartition {
    pub fn l(&self) -> usize {
        self.clusters.len()
    }

    pub fn pair(&self, i: usize, j: usize) -> Option<&PairRecord> {
        let (i, j) = (i.min(j), i.max(j));
        self.pairs.iter().find(|p| p.i == i && p.j == j)
    }

    pub fn dump(&self) -> PartitionDump {
        PartitionDump {
            params: self.params,
            seed: self.seed,
            evened: self.evened,
            v0: self.v0.to_vec(),
            clusters: self.clusters.iter().map(VertexSet::to_vec).collect(),
            kept: self.pairs.iter().filter(|p| p.kept).map(|p| (p.i, p.j)).collect(),
        }
    }

    /// Rebuilds a partition from a dump. Pair verdicts are taken from the
    /// dump's kept list; densities and G′ are recomputed from `g`.
    pub fn load(g: &Graph, dump: &PartitionDump) -> Result<Self, PartitionError> {
        let n = g.n();
        let bad = |m: &str| PartitionError::BadDump(m.to_string());
        let mut cluster_of = vec![None; n];
        let mut seen = VertexSet::empty(n);
        for v in dump.v0.iter().chain(dump.clusters.iter().flatten()) {
            if *v >= n || seen.contains(*v) {
                return Err(bad("vertex out of range or listed twice"));
            }
            seen.insert(*v);
        }
        if seen.len() != n {
            return Err(bad("vertices missing"));
        }
        let size = dump.clusters.first().map_or(0, Vec::len);
        if dump.clusters.iter().any(|c| c.len() != size) || size < 2 {
            return Err(bad("clusters must share one size of at least 2"));
        }
        for (c, members) in dump.clusters.iter().enumerate() {
            for &v in members {
                cluster_of[v] = Some(c);
            }
        }
        let clusters: Vec<VertexSet> = dump.clusters.iter().map(|c| VertexSet::from_iter(n, c.iter().copied())).collect();
        let l = clusters.len();
        let mut pairs = vec![];
        for i in 0..l {
            for j in i + 1..l {
                let density = g.density(&clusters[i], &clusters[j]).expect("clusters are disjoint and non-empty");
                let kept = dump.kept.contains(&(i, j));
                pairs.push(PairRecord { i, j, density, regular: kept, worst_deviation: f64::NAN, kept });
            }
        }
        let pruned = prune(g, &cluster_of, &pairs, l);
        Ok(RegularityPartition {
            v0: VertexSet::from_iter(n, dump.v0.iter().copied()),
            clusters,
            cluster_size: size,
            cluster_of,
            pairs,
            pruned,
            params: dump.params,
            seed: dump.seed,
            evened: dump.evened,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionDump {
    pub params: Params,
    pub seed: u64,
    pub evened: bool,
    pub v0: Vec<usize>,
    pub clusters: Vec<Vec<usize>>,
    pub kept: Vec<(usize, usize)>,
}

fn prune(g: &Graph, cluster_of: &[Option<usize>], pairs: &[PairRecord], l: usize) -> Graph {
    let mut keep = vec![false; l * l];
    for p in pairs.iter().filter(|p| p.kept) {
        keep[p.i * l + p.j] = true;
        keep[p.j * l + p.i] = true;
    }
    let mut b = GraphBuilder::new(g.n());
    for (u, v) in g.edges() {
        let ok = match (cluster_of[u], cluster_of[v]) {
            (Some(a), Some(c)) => a != c && keep[a * l + c],
            _ => true,
        };
        if ok {
            b.add_edge(u, v);
        }
    }
    b.build()
}

fn attempt(g: &Graph, params: &Params, seed: u64, round: u64) -> RegularityPartition {
    let n = g.n();
    let mut rng = seeds::rng_for(seed, "partition", round);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut l = params.m0;
    let size = n / l;
    let mut v0: Vec<usize> = perm[l * size..].to_vec();
    let mut chunks: Vec<Vec<usize>> = perm[..l * size].chunks(size).map(<[usize]>::to_vec).collect();
    let evened = l % 2 == 1;
    if evened {
        v0.extend(chunks.pop().expect("at least one cluster"));
        l -= 1;
    }
    let clusters: Vec<VertexSet> = chunks.iter().map(|c| VertexSet::from_iter(n, c.iter().copied())).collect();
    let mut cluster_of = vec![None; n];
    for (c, members) in chunks.iter().enumerate() {
        for &v in members {
            cluster_of[v] = Some(c);
        }
    }
    let idx: Vec<(usize, usize)> = (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).collect();
    let pairs: Vec<PairRecord> = idx
        .par_iter()
        .map(|&(i, j)| {
            let mode = RegularityMode::sampled(seeds::derive_seed(seed, "pair", round << 32 | (i * l + j) as u64));
            let v = is_epsilon_regular(g, &clusters[i], &clusters[j], params.eps, mode)
                .expect("clusters are disjoint with at least 2 vertices");
            let kept = v.regular && v.observed_density.exceeds(params.d);
            PairRecord { i, j, density: v.observed_density, regular: v.regular, worst_deviation: v.worst_deviation, kept }
        })
        .collect();
    let pruned = prune(g, &cluster_of, &pairs, l);
    RegularityPartition {
        v0: VertexSet::from_iter(n, v0),
        clusters,
        cluster_size: size,
        cluster_of,
        pairs,
        pruned,
        params: *params,
        seed,
        evened,
    }
}

pub fn build_partition(g: &Graph, params: &Params, seed: u64) -> Result<RegularityPartition, PartitionError> {
    params.validate_ranges()?;
    let n = g.n();
    if params.m0 < 2 || n < 2 * params.m0 {
        return Err(PartitionError::TooSmall { n, m0: params.m0 });
    }
    let mut last = String::new();
    for round in 0..MAX_ATTEMPTS {
        let part = attempt(g, params, seed, round);
        let report = check_contract(g, &part, seeds::derive_seed(seed, "contract", round));
        if report.holds() {
            return Ok(part);
        }
        last = format!("{report:?}");
    }
    Err(PartitionError::ContractFailed { attempts: MAX_ATTEMPTS, last })
}

/// The five degree-form properties, checked after the fact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractReport {
    pub v0_size: usize,
    pub v0_ok: bool,
    pub equal_sizes: bool,
    /// Largest `deg_G(v) − deg_G′(v)`.
    pub max_degree_loss: usize,
    pub degree_ok: bool,
    pub no_intra_edges: bool,
    pub densities_ok: bool,
    /// Re-sampled regularity of every pair with positive G′-density.
    pub pairs_regular: bool,
}

impl ContractReport {
    pub fn holds(&self) -> bool {
        self.v0_ok && self.equal_sizes && self.degree_ok && self.no_intra_edges && self.densities_ok && self.pairs_regular
    }
}

pub fn check_contract(g: &Graph, part: &RegularityPartition, seed: u64) -> ContractReport {
    let n = g.n();
    let p = &part.params;
    let h = &part.pruned;
    let v0_cap = if part.evened { 2.0 * p.eps } else { p.eps } * n as f64;
    let max_degree_loss = (0..n).map(|v| g.degree(v) - h.degree(v)).max().unwrap_or(0);
    let degree_ok = (0..n).all(|v| (h.degree(v) as f64) > g.degree(v) as f64 - (p.d + p.eps) * n as f64);
    let no_intra_edges = part.clusters.iter().all(|c| c.iter().all(|v| h.deg_in(v, c) == 0));
    let l = part.l();
    let idx: Vec<(usize, usize)> = (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).collect();
    let checks: Vec<(bool, bool)> = idx
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&part.clusters[i], &part.clusters[j]);
            let dens = h.density(a, b).expect("clusters are disjoint");
            let density_ok = dens.edges == 0 || dens.exceeds(p.d);
            let regular = dens.edges == 0 || {
                let mode = RegularityMode::sampled(seeds::derive_seed(seed, "recheck", (i * l + j) as u64));
                is_epsilon_regular(h, a, b, p.eps, mode).map(|v| v.regular).unwrap_or(false)
            };
            (density_ok, regular)
        })
        .collect();
    ContractReport {
        v0_size: part.v0.len(),
        v0_ok: part.v0.len() as f64 <= v0_cap,
        equal_sizes: part.clusters.iter().all(|c| c.len() == part.cluster_size),
        max_degree_loss,
        degree_ok,
        no_intra_edges,
        densities_ok: checks.iter().all(|c| c.0),
        pairs_regular: checks.iter().all(|c| c.1),
    }
}
