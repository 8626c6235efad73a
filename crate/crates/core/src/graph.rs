//! Finite graphs with optional loops and an optional root set.
//!
//! Vertices are dense integers `0..n`. Adjacency is stored as one bit row
//! per vertex, which keeps products and canonical labeling cheap at the
//! sizes this crate targets.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[inline]
pub(crate) fn test_bit(row: &[u64], i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

pub(crate) fn iter_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(w * 64 + b)
        })
    })
}

/// A finite simple graph, possibly with loops, possibly with roots.
///
/// Equality is labeled equality; use [`crate::canon`] for isomorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    roots: Vec<u64>,
    allows_loops: bool,
}

impl Graph {
    /// The empty graph, the additive zero.
    pub fn empty() -> Self {
        Self::edgeless(0)
    }

    pub fn edgeless(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            roots: vec![0; words],
            allows_loops: false,
        }
    }

    /// Builds a loopless graph. Rejects out-of-range endpoints, loops and
    /// duplicate edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::build(n, edges, false)
    }

    /// Builds a graph in which loops `(v, v)` are permitted.
    pub fn from_edges_with_loops(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::build(n, edges, true)
    }

    fn build(n: usize, edges: &[(usize, usize)], allows_loops: bool) -> Result<Self> {
        let mut g = Self::edgeless(n);
        g.allows_loops = allows_loops;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v && !allows_loops {
                return Err(Error::InvalidGraph(format!(
                    "loop at {u} but loops are not allowed"
                )));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::edgeless(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge_unchecked(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::edgeless(n);
        for v in 1..n {
            g.add_edge_unchecked(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut g = Self::path(n);
        g.add_edge_unchecked(n - 1, 0);
        g
    }

    /// `K1` whose single vertex is its root.
    pub fn rooted_k1() -> Self {
        Self::edgeless(1).with_all_roots()
    }

    /// `K1` carrying a loop, the neutral element of the direct product.
    pub fn looped_k1() -> Self {
        let mut g = Self::edgeless(1);
        g.allows_loops = true;
        g.add_edge_unchecked(0, 0);
        g
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        let w = self.words;
        set_bit(&mut self.adj[u * w..(u + 1) * w], v);
        set_bit(&mut self.adj[v * w..(v + 1) * w], u);
    }

    pub(crate) fn set_allows_loops(&mut self, allows: bool) {
        self.allows_loops = allows;
    }

    pub(crate) fn set_root(&mut self, v: usize) {
        set_bit(&mut self.roots, v);
    }

    /// Replaces the root set. Fails if a root is out of range.
    pub fn with_roots(mut self, roots: &[usize]) -> Result<Self> {
        self.roots.iter_mut().for_each(|w| *w = 0);
        for &r in roots {
            if r >= self.n {
                return Err(Error::InvalidGraph(format!(
                    "root {r} out of range for {} vertices",
                    self.n
                )));
            }
            set_bit(&mut self.roots, r);
        }
        Ok(self)
    }

    /// Makes every vertex a root (a "Cartesian" factor).
    pub fn with_all_roots(mut self) -> Self {
        for v in 0..self.n {
            set_bit(&mut self.roots, v);
        }
        self
    }

    pub fn without_roots(mut self) -> Self {
        self.roots.iter_mut().for_each(|w| *w = 0);
        self
    }

    /// Adds a loop at every vertex.
    pub fn with_loops_everywhere(mut self) -> Self {
        self.allows_loops = true;
        for v in 0..self.n {
            self.add_edge_unchecked(v, v);
        }
        self
    }

    /// Removes all loops and forbids new ones.
    pub fn strip_loops(mut self) -> Self {
        let w = self.words;
        for v in 0..self.n {
            self.adj[v * w + v / 64] &= !(1 << (v % 64));
        }
        self.allows_loops = false;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn allows_loops(&self) -> bool {
        self.allows_loops
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        test_bit(self.row(u), v)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn is_root(&self, v: usize) -> bool {
        test_bit(&self.roots, v)
    }

    /// Neighbors of `v`, including `v` itself when it carries a loop.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// Number of neighbors, a loop counting once.
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Edges as pairs `(u, v)` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v >= u)
                .map(move |v| (u, v))
        })
    }

    /// Number of edges including loops.
    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&v| self.has_loop(v)).count()
    }

    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.roots).take_while(move |&v| v < self.n)
    }

    pub fn root_count(&self) -> usize {
        self.roots.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True when the root set is the whole vertex set.
    pub fn is_fully_rooted(&self) -> bool {
        self.root_count() == self.n
    }

    /// Connected-component label per vertex and the number of components.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// The empty graph is not connected (it has zero components).
    pub fn is_connected(&self) -> bool {
        self.component_labels().1 == 1
    }

    /// True iff the graph has no odd cycle; a loop is an odd cycle.
    pub fn is_bipartite(&self) -> bool {
        if self.loop_count() > 0 {
            return false;
        }
        let mut side = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The subgraph induced on `vertices`, renumbered densely in the given
    /// order. Roots and the loop flag are inherited.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::edgeless(vertices.len());
        g.allows_loops = self.allows_loops;
        for (i, &u) in vertices.iter().enumerate() {
            if self.is_root(u) {
                g.set_root(i);
            }
            for (j, &v) in vertices.iter().enumerate().skip(i) {
                if self.has_edge(u, v) {
                    g.add_edge_unchecked(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::edgeless(self.n);
        g.allows_loops = self.allows_loops;
        for v in self.roots() {
            g.set_root(perm[v]);
        }
        for (u, v) in self.edges() {
            g.add_edge_unchecked(perm[u], perm[v]);
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::edgeless(n);
        g.allows_loops = self.allows_loops || other.allows_loops;
        for (part, offset) in [(self, 0), (other, self.n)] {
            for v in part.roots() {
                g.set_root(v + offset);
            }
            for (u, v) in part.edges() {
                g.add_edge_unchecked(u + offset, v + offset);
            }
        }
        g
    }

    /// `times` disjoint copies of `self`.
    pub fn copies(&self, times: usize) -> Graph {
        (0..times).fold(Graph::empty(), |acc, _| acc.disjoint_union(self))
    }
}

impl Default for Graph {
    fn default() -> Self {
        Graph::empty()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        let roots: Vec<_> = self.roots().collect();
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &edges)
            .field("roots", &roots)
            .field("allows_loops", &self.allows_loops)
            .finish()
    }
}
