//! Immutable simple graphs stored as symmetric bit matrices.
//!
//! Every vertex owns one row of `words` 64-bit words; bit `j` of row `i` is set
//! iff `{i, j}` is an edge. Graphs with at most 64 vertices use a single word
//! per row and take the fast paths in the neighbourhood primitives.

use std::fmt::Write as _;

use rand::Rng;
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("vertex set sized for order {set} used with graph of order {graph}")]
    OrderMismatch { set: usize, graph: usize },
    #[error("permutation of length {len} is not a permutation of 0..{order}")]
    BadPermutation { len: usize, order: usize },
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// Iterates the indices of set bits in a word slice.
pub(crate) fn bit_indices(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}

#[inline]
fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
fn and_popcount(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

/// A subset of the vertices `0..n` of some graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            bits: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = Vertex>) -> Result<Self, GraphError> {
        let mut s = Self::empty(n);
        for v in vertices {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    fn from_words(n: usize, bits: Vec<u64>) -> Self {
        VertexSet { n, bits }
    }

    /// Order of the graph this set lives in.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        popcount(&self.bits)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.n && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: Vertex) {
        assert!(v < self.n, "vertex {v} outside universe of size {}", self.n);
        self.bits[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: Vertex) {
        if v < self.n {
            self.bits[v / 64] &= !(1 << (v % 64));
        }
    }

    /// `V \ self`.
    pub fn complement(&self) -> VertexSet {
        let mut bits: Vec<u64> = self.bits.iter().map(|w| !w).collect();
        mask_tail(&mut bits, self.n);
        VertexSet::from_words(self.n, bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        VertexSet::from_words(self.n, bits)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        bit_indices(&self.bits)
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }
}

fn mask_tail(bits: &mut [u64], n: usize) {
    let full_words = n / 64;
    for (w, word) in bits.iter_mut().enumerate() {
        if w > full_words || (w == full_words && n % 64 == 0) {
            *word = 0;
        } else if w == full_words {
            *word &= (1u64 << (n % 64)) - 1;
        }
    }
}

/// Mutable accumulator for building a [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        GraphBuilder {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<&mut Self, GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, order: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.set(u, v);
        Ok(self)
    }

    #[inline]
    pub(crate) fn set(&mut self, u: Vertex, v: Vertex) {
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn build(self) -> Graph {
        let m = popcount(&self.adj) / 2;
        Graph {
            n: self.n,
            words: self.words,
            adj: self.adj,
            m,
        }
    }
}

/// An immutable simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        if n >= 3 {
            for i in 0..n {
                b.set(i, (i + 1) % n);
            }
        }
        b.build()
    }

    pub fn path(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        for i in 1..n {
            b.set(i - 1, i);
        }
        b.build()
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// Erdős–Rényi G(n, p).
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
        let mut b = GraphBuilder::new(n);
        for j in 1..n {
            for i in 0..j {
                if rng.random_bool(p) {
                    b.set(i, j);
                }
            }
        }
        b.build()
    }

    /// The labeled graph whose upper-triangle bits, in graph6 column order
    /// (`(0,1), (0,2), (1,2), (0,3), ...`), are the low bits of `code`.
    ///
    /// Panics if `n > 11` (the code would not fit in 64 bits).
    pub fn from_pair_code(n: usize, code: u64) -> Graph {
        assert!(n * n.saturating_sub(1) / 2 <= 64, "order {n} too large for a 64-bit pair code");
        let mut b = GraphBuilder::new(n);
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if code >> bit & 1 == 1 {
                    b.set(i, j);
                }
                bit += 1;
            }
        }
        b.build()
    }

    /// Inverse of [`Graph::from_pair_code`].
    pub fn pair_code(&self) -> u64 {
        assert!(self.n * self.n.saturating_sub(1) / 2 <= 64);
        let mut code = 0u64;
        let mut bit = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub(crate) fn row(&self, v: Vertex) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, order: self.n })
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        if s.n == self.n {
            Ok(())
        } else {
            Err(GraphError::OrderMismatch { set: s.n, graph: self.n })
        }
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Degree of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn deg(&self, v: Vertex) -> usize {
        popcount(self.row(v))
    }

    /// Triangle-degree of `v`: the number of edges inside `N(v)`.
    /// Panics if `v` is out of range.
    pub fn tri(&self, v: Vertex) -> usize {
        if self.words == 1 {
            let nv = self.adj[v];
            let twice: u32 = bit_indices(&[nv]).map(|u| (self.adj[u] & nv).count_ones()).sum();
            return twice as usize / 2;
        }
        let nv = self.row(v);
        let twice: usize = bit_indices(nv).map(|u| and_popcount(self.row(u), nv)).sum();
        twice / 2
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.deg(v))
    }

    pub fn triangle_degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.tri(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.deg(v)).collect()
    }

    pub fn triangle_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.tri(v)).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.deg(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.deg(v)).max()
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.min_degree()?;
        (self.max_degree() == Some(d)).then_some(d)
    }

    /// Open neighbourhood `N(v)`.
    pub fn neighbors(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        self.check(v)?;
        Ok(VertexSet::from_words(self.n, self.row(v).to_vec()))
    }

    /// Closed neighbourhood `N[v]`.
    pub fn closed_neighbors(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        let mut s = self.neighbors(v)?;
        s.insert(v);
        Ok(s)
    }

    pub fn complement(&self) -> Graph {
        let mut adj = Vec::with_capacity(self.adj.len());
        for v in 0..self.n {
            let mut row: Vec<u64> = self.row(v).iter().map(|w| !w).collect();
            mask_tail(&mut row, self.n);
            row[v / 64] &= !(1 << (v % 64));
            adj.extend(row);
        }
        let m = (self.n * self.n.saturating_sub(1) / 2) - self.m;
        Graph {
            n: self.n,
            words: self.words,
            adj,
            m,
        }
    }

    /// `G[S]`, with the members of `S` renumbered in ascending order.
    pub fn induced(&self, s: &VertexSet) -> Result<Graph, GraphError> {
        self.check_set(s)?;
        let keep: Vec<Vertex> = s.iter().collect();
        let mut b = GraphBuilder::new(keep.len());
        for (a, &u) in keep.iter().enumerate() {
            for (c, &v) in keep.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    b.set(a, c);
                }
            }
        }
        Ok(b.build())
    }

    /// `e(A, B)`: edges with one end in `a` and the other in `b`.
    pub fn cut_edges(&self, a: &VertexSet, b: &VertexSet) -> Result<usize, GraphError> {
        self.check_set(a)?;
        self.check_set(b)?;
        if !a.is_disjoint(b) {
            return Err(GraphError::OverlappingSets);
        }
        Ok(a.iter().map(|v| and_popcount(self.row(v), &b.bits)).sum())
    }

    /// Relabels so that new vertex `i` is old vertex `perm[i]`.
    pub fn permute(&self, perm: &[Vertex]) -> Result<Graph, GraphError> {
        let bad = GraphError::BadPermutation { len: perm.len(), order: self.n };
        if perm.len() != self.n {
            return Err(bad);
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(bad);
            }
        }
        let mut b = GraphBuilder::new(self.n);
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(perm[i], perm[j]) {
                    b.set(i, j);
                }
            }
        }
        Ok(b.build())
    }

    /// Edges `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |i| bit_indices(self.row(i)).filter(move |&j| j > i).map(move |j| (i, j)))
    }

    /// One `"i j"` line per edge.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (i, j) in self.edges() {
            let _ = writeln!(out, "{i} {j}");
        }
        out
    }

    /// Adds a vertex `n` adjacent to exactly `neighbors`.
    pub(crate) fn with_new_vertex(&self, neighbors: impl IntoIterator<Item = Vertex>) -> Graph {
        let mut b = GraphBuilder::new(self.n + 1);
        for (i, j) in self.edges() {
            b.set(i, j);
        }
        for u in neighbors {
            b.set(u, self.n);
        }
        b.build()
    }
}
