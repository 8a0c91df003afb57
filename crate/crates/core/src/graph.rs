//! Simple undirected graphs with bitset adjacency, and the graph operations
//! used throughout the crate: products, join, complement and line graphs.
//!
//! Vertices are always `0..n`. For a product of `G` with `H`, the pair
//! `(v, i)` is stored at index `v * |V(H)| + i`, so a colouring of `G ⊠ K_t`
//! is addressed with plain index arithmetic.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A subset of `0..n` stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet { n, words: alloc::vec![0; n.div_ceil(WORD)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut s = Self::new(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    /// Size of the ground set.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        self.words[v / WORD] |= 1 << (v % WORD);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v / WORD] &= !(1 << (v % WORD));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD + b)
                }
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
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

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection_len(other) == 0
    }

    /// The set as a single word; only valid for universes of at most 64.
    pub fn as_u64(&self) -> u64 {
        debug_assert!(self.n <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Equality compares structure only; the optional name is a label.
#[derive(Clone, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    name: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: alloc::vec![VertexSet::new(n); n], name: None }
    }

    /// Builds a graph from an edge list. Self-loops and out-of-range endpoints
    /// are rejected; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric adjacency predicate evaluated on `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.adj[u].insert(v);
                    g.adj[v].insert(u);
                }
            }
        }
        g
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbours(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.n == 0 || self.max_degree() == self.min_degree()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Adjacency rows as 64-bit masks. Fails for graphs with more than 64 vertices.
    pub fn masks(&self) -> Result<Vec<u64>> {
        if self.n > WORD {
            return Err(Error::TooLarge { n: self.n, cap: WORD });
        }
        Ok(self.adj.iter().map(VertexSet::as_u64).collect())
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn component_within(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::new(self.n);
        if !within.contains(start) {
            return seen;
        }
        seen.insert(start);
        let mut stack = alloc::vec![start];
        while let Some(u) = stack.pop() {
            for w in self.adj[u].iter() {
                if within.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Connected components, each listed once, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let all = VertexSet::full(self.n);
        let mut done = VertexSet::new(self.n);
        let mut out = Vec::new();
        for v in 0..self.n {
            if !done.contains(v) {
                let c = self.component_within(v, &all);
                done.union_with(&c);
                out.push(c);
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_within(0, &VertexSet::full(self.n)).len() == self.n
    }

    /// Induced subgraph on `keep`, relabelled in increasing order.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let verts = keep.to_vec();
        Graph::from_fn(verts.len(), |a, b| self.has_edge(verts[a], verts[b]))
    }

    /// Maximum degree of the subgraph induced by `set`.
    pub fn induced_max_degree(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.adj[v].intersection_len(set)).max().unwrap_or(0)
    }

    /// Relabels vertices so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.adj[perm[u]].insert(perm[v]);
            g.adj[perm[v]].insert(perm[u]);
        }
        g
    }

    /// Upper-triangle adjacency bits in graph6 column order
    /// `(0,1), (0,2), (1,2), (0,3), ...`.
    pub fn upper_triangle_bits(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for j in 1..self.n {
            for i in 0..j {
                bits.push(self.has_edge(i, j));
            }
        }
        bits
    }
}

/// Strong product `G ⊠ H`: `(u,i) ~ (v,j)` iff each coordinate is equal or
/// adjacent and the pairs differ.
pub fn strong_product(g: &Graph, h: &Graph) -> Graph {
    let k = h.n();
    Graph::from_fn(g.n() * k, |a, b| {
        let (u, i) = (a / k, a % k);
        let (v, j) = (b / k, b % k);
        (u == v || g.has_edge(u, v)) && (i == j || h.has_edge(i, j))
    })
}

/// Lexicographic product `G[H]`: `(v,i) ~ (w,j)` iff `v ~ w`, or `v = w` and `i ~ j`.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Graph {
    let k = h.n();
    Graph::from_fn(g.n() * k, |a, b| {
        let (u, i) = (a / k, a % k);
        let (v, j) = (b / k, b % k);
        g.has_edge(u, v) || (u == v && h.has_edge(i, j))
    })
}

/// Disjoint union of `g` and `h` (vertices of `h` shifted by `|V(G)|`).
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.n();
    Graph::from_fn(off + h.n(), |a, b| {
        if b < off {
            g.has_edge(a, b)
        } else if a >= off {
            h.has_edge(a - off, b - off)
        } else {
            false
        }
    })
}

/// Join `G ∇ H`: disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let off = g.n();
    Graph::from_fn(off + h.n(), |a, b| {
        if b < off {
            g.has_edge(a, b)
        } else if a >= off {
            h.has_edge(a - off, b - off)
        } else {
            true
        }
    })
}

pub fn complement(g: &Graph) -> Graph {
    Graph::from_fn(g.n(), |u, v| !g.has_edge(u, v))
}

/// Line graph; vertex `k` of the result is the `k`-th edge of [`Graph::edges`].
pub fn line_graph(g: &Graph) -> Result<Graph> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(Error::NoEdges);
    }
    Ok(Graph::from_fn(edges.len(), |a, b| {
        let (p, q) = edges[a];
        let (r, s) = edges[b];
        p == r || p == s || q == r || q == s
    }))
}
