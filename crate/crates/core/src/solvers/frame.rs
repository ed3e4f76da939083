//! A cycle written as fixed vertices interleaved with path slots whose
//! contents are filled in later.

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Piece {
    Fixed(usize),
    /// Slot index; its path is laid out from the slot's `from` end to its `to` end.
    Slot(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Frame {
    pub pieces: Vec<Piece>,
    /// `(from, to)` ends of each slot in cycle direction.
    pub slots: Vec<(usize, usize)>,
}

impl Frame {
    pub fn new() -> Self {
        Frame { pieces: vec![], slots: vec![] }
    }

    pub fn fixed(&mut self, vs: &[usize]) -> &mut Self {
        self.pieces.extend(vs.iter().map(|&v| Piece::Fixed(v)));
        self
    }

    pub fn slot(&mut self, from: usize, to: usize) -> usize {
        self.slots.push((from, to));
        self.pieces.push(Piece::Slot(self.slots.len() - 1));
        self.slots.len() - 1
    }

    /// Walks forward from `x` to `y` and returns the number of fixed vertices
    /// strictly between them together with the slots passed on the way. A
    /// slot end equal to `x` or `y` is not supported.
    pub fn arc(&self, x: usize, y: usize) -> Option<(usize, Vec<usize>)> {
        let px = self.pieces.iter().position(|&p| p == Piece::Fixed(x))?;
        let m = self.pieces.len();
        let mut fixed = 0;
        let mut slots = vec![];
        for step in 1..m {
            match self.pieces[(px + step) % m] {
                Piece::Fixed(v) if v == y => return Some((fixed, slots)),
                Piece::Fixed(_) => fixed += 1,
                Piece::Slot(s) => slots.push(s),
            }
        }
        None
    }

    /// Expands the frame with one path per slot. Each path may be given in
    /// either orientation.
    pub fn assemble(&self, paths: &[Vec<usize>]) -> Result<Vec<usize>, String> {
        let mut order = vec![];
        for &p in &self.pieces {
            match p {
                Piece::Fixed(v) => order.push(v),
                Piece::Slot(s) => {
                    let (a, b) = self.slots[s];
                    let path = &paths[s];
                    match (path.first(), path.last()) {
                        (Some(&f), Some(&l)) if f == a && l == b => order.extend(path),
                        (Some(&f), Some(&l)) if f == b && l == a => order.extend(path.iter().rev()),
                        _ => return Err(format!("slot {s} filled with a path not joining {a} and {b}")),
                    }
                }
            }
        }
        Ok(order)
    }
}

/// True when `order` is a Hamiltonian cycle of `g`. Used as an internal
/// sanity check before certificates go to the independent verifier.
pub(crate) fn is_ham_cycle(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    if order.len() != n || n < 3 {
        return false;
    }
    let mut seen = vec![false; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || seen[v] || !g.has_edge(v, order[(i + 1) % n]) {
            return false;
        }
        seen[v] = true;
    }
    true
}
