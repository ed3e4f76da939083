//! Bitset-backed simple undirected graphs and vertex sets.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex sets overlap")]
    Overlap,
    #[error("vertex set is empty")]
    EmptySet,
}

/// A set of vertex ids drawn from `0..n`, stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { n, words: vec![0; words_for(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut s = Self::empty(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    /// Universe size (not the cardinality).
    #[inline]
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v / WORD] |= 1u64 << (v % WORD);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v / WORD] &= !(1u64 << (v % WORD));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        VertexSet { n: self.n, words }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        VertexSet { n: self.n, words }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        VertexSet { n: self.n, words }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| BitIter { word: w, base: i * WORD })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct BitIter {
    word: u64,
    base: usize,
}

impl Iterator for BitIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

/// Edge density `e(X,Y) / (|X||Y|)` kept as an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Density {
    pub edges: u64,
    pub pairs: u64,
}

impl Density {
    pub fn new(edges: u64, pairs: u64) -> Self {
        assert!(pairs > 0, "density of an empty pair");
        Density { edges, pairs }
    }

    pub fn value(&self) -> f64 {
        self.edges as f64 / self.pairs as f64
    }

    /// Compares against a real threshold exactly (`edges` vs `threshold * pairs`
    /// evaluated once in f64 on integers, no accumulated rounding).
    pub fn cmp_threshold(&self, threshold: f64) -> Ordering {
        let lhs = self.edges as f64;
        let rhs = threshold * self.pairs as f64;
        lhs.partial_cmp(&rhs).unwrap_or(Ordering::Equal)
    }

    pub fn exceeds(&self, threshold: f64) -> bool {
        self.cmp_threshold(threshold) == Ordering::Greater
    }

    /// `|self - other|` as an exact rational compared to `eps`: true when strictly below.
    pub fn deviation_below(&self, other: &Density, eps: f64) -> bool {
        let a = self.edges as i128 * other.pairs as i128;
        let b = other.edges as i128 * self.pairs as i128;
        let denom = self.pairs as f64 * other.pairs as f64;
        ((a - b).abs() as f64) < eps * denom
    }
}

/// Immutable simple undirected graph over `0..n` with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.try_add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v);
            }
        }
        b.build()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.stride + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &w)| BitIter { word: w, base: i * WORD })
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet { n: self.n, words: self.row(v).to_vec() }
    }

    /// `|adj(v) ∩ X|`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> Result<usize, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.deg_in(v, set))
    }

    /// Unchecked variant of [`Graph::degree_into`] for hot loops.
    #[inline]
    pub fn deg_in(&self, v: usize, set: &VertexSet) -> usize {
        self.row(v)
            .iter()
            .zip(set.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> VertexSet {
        let words = self.row(u).iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
        VertexSet { n: self.n, words }
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of edges with one end in `X` and the other in `Y` (disjoint sets).
    pub fn edges_between(&self, x: &VertexSet, y: &VertexSet) -> u64 {
        x.iter().map(|v| self.deg_in(v, y) as u64).sum()
    }

    pub fn density(&self, x: &VertexSet, y: &VertexSet) -> Result<Density, GraphError> {
        if x.is_empty() || y.is_empty() {
            return Err(GraphError::EmptySet);
        }
        if !x.is_disjoint(y) {
            return Err(GraphError::Overlap);
        }
        let pairs = (x.len() * y.len()) as u64;
        Ok(Density::new(self.edges_between(x, y), pairs))
    }

    pub fn complement(&self) -> Graph {
        let mut b = GraphBuilder::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    b.add_edge(u, v);
                }
            }
        }
        b.build()
    }

    /// Subgraph induced on `keep`, relabelled in ascending order; returns the map new→old.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut b = GraphBuilder::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j);
                }
            }
        }
        (b.build(), keep.to_vec())
    }

    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder { n: self.n, stride: self.stride, rows: self.rows.clone() }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

/// Mutable staging area; freeze with [`GraphBuilder::build`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        let stride = words_for(n).max(1);
        GraphBuilder { n, stride, rows: vec![0; n * stride] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.add_edge(u, v);
        Ok(())
    }

    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.stride + v / WORD] |= 1u64 << (v % WORD);
        self.rows[v * self.stride + u / WORD] |= 1u64 << (u % WORD);
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + v / WORD] &= !(1u64 << (v % WORD));
        self.rows[v * self.stride + u / WORD] &= !(1u64 << (u % WORD));
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.stride + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v * self.stride..(v + 1) * self.stride]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn build(self) -> Graph {
        Graph { n: self.n, stride: self.stride, rows: self.rows }
    }
}
