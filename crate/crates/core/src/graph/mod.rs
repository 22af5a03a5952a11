//! Simple undirected graphs on dense vertex labels `0..n`.

mod construct;

pub use construct::{construct_named, Family};

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{param, Result};

/// Set of vertices of a host graph, one bit per vertex.
pub type VertexSet = FixedBitSet;

/// Builds a [`VertexSet`] of capacity `n` from vertex ids.
pub fn vertex_set(n: usize, vertices: impl IntoIterator<Item = usize>) -> VertexSet {
    let mut s = FixedBitSet::with_capacity(n);
    for v in vertices {
        s.insert(v);
    }
    s
}

/// Immutable simple graph.
///
/// Adjacency is kept twice: a sorted neighbor list per vertex and a packed
/// bit row per vertex. Edits return a new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    rows: Vec<FixedBitSet>,
    nbrs: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            m: 0,
            rows: vec![FixedBitSet::with_capacity(n); n],
            nbrs: vec![Vec::new(); n],
        }
    }

    /// Graph from an edge list. Repeated edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return param(format!("edge ({u},{v}) out of range for n = {n}"));
            }
            if u == v {
                return param(format!("self-loop at vertex {u}"));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    /// Graph from symmetric, irreflexive bit rows. Callers guarantee symmetry.
    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        let n = rows.len();
        let nbrs: Vec<Vec<usize>> = rows.iter().map(|r| r.ones().collect()).collect();
        let m = nbrs.iter().map(Vec::len).sum::<usize>() / 2;
        debug_assert!((0..n).all(|u| !rows[u].contains(u)));
        Graph { n, m, rows, nbrs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Sorted neighbors of `u`.
    #[inline]
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.nbrs[u]
    }

    /// Bit row of `u`.
    #[inline]
    pub fn row(&self, u: usize) -> &FixedBitSet {
        &self.rows[u]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.nbrs[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.nbrs.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.nbrs.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.nbrs[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Copy of this graph with `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        if u >= self.n || v >= self.n || u == v {
            return param(format!("cannot add edge ({u},{v}) on {} vertices", self.n));
        }
        let mut rows = self.rows.clone();
        rows[u].insert(v);
        rows[v].insert(u);
        Ok(Self::from_rows(rows))
    }

    /// Copy of this graph with `uv` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut rows = self.rows.clone();
        if u < self.n && v < self.n {
            rows[u].set(v, false);
            rows[v].set(u, false);
        }
        Self::from_rows(rows)
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![FixedBitSet::with_capacity(self.n); self.n];
        for (u, v) in self.edges() {
            rows[perm[u]].insert(perm[v]);
            rows[perm[v]].insert(perm[u]);
        }
        Self::from_rows(rows)
    }

    /// Subgraph induced on `verts`, relabeled `0..verts.len()` in the given order.
    pub fn induced(&self, verts: &[usize]) -> Self {
        let k = verts.len();
        let mut rows = vec![FixedBitSet::with_capacity(k); k];
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        Self::from_rows(rows)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.nbrs[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// BFS distance layers `N_0(u), N_1(u), …` of the component of `root`.
    pub fn bfs_layers(&self, root: usize) -> Result<NeighborhoodLayers> {
        if root >= self.n {
            return param(format!("root {root} out of range for n = {}", self.n));
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[root] = 0;
        let mut layers = vec![vec![root]];
        loop {
            let mut next = Vec::new();
            for &u in layers.last().unwrap() {
                for &w in &self.nbrs[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = layers.len();
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        Ok(NeighborhoodLayers { root, layers })
    }

    /// Edge counts `e(X)`, `e(Y)` and `e(X, Y)` for disjoint `X`, `Y`.
    pub fn edge_counts(&self, pair: &VertexSetPair) -> EdgeCounts {
        let inside = |s: &VertexSet| -> usize {
            s.ones().map(|u| self.rows[u].intersection_count(s)).sum::<usize>() / 2
        };
        let cross = pair
            .x
            .ones()
            .map(|u| self.rows[u].intersection_count(&pair.y))
            .sum();
        EdgeCounts {
            inside_x: inside(&pair.x),
            inside_y: inside(&pair.y),
            cross,
        }
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        s.ones().map(|u| self.rows[u].intersection_count(s)).sum::<usize>() / 2
    }

    /// Number of edges between disjoint sets `a` and `b`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.ones().map(|u| self.rows[u].intersection_count(b)).sum()
    }

    /// Join: disjoint copies plus every edge between them.
    pub fn join(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for u in 0..self.n {
            rows[u].extend(self.nbrs[u].iter().copied());
            rows[u].insert_range(self.n..n);
        }
        for u in 0..other.n {
            let r = &mut rows[self.n + u];
            r.extend(other.nbrs[u].iter().map(|&w| w + self.n));
            r.insert_range(0..self.n);
        }
        Graph::from_rows(rows)
    }

    /// Disjoint union; `other` is relabeled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for u in 0..self.n {
            rows[u].extend(self.nbrs[u].iter().copied());
        }
        for u in 0..other.n {
            rows[self.n + u].extend(other.nbrs[u].iter().map(|&w| w + self.n));
        }
        Graph::from_rows(rows)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Distance layers around a root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodLayers {
    pub root: usize,
    /// `layers[i]` holds the vertices at distance exactly `i`, sorted.
    pub layers: Vec<Vec<usize>>,
}

impl NeighborhoodLayers {
    /// `d_i(root)`, zero beyond the eccentricity.
    pub fn size(&self, i: usize) -> usize {
        self.layers.get(i).map_or(0, Vec::len)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    /// Layer `i` as a vertex set of capacity `n`.
    pub fn layer_set(&self, i: usize, n: usize) -> VertexSet {
        vertex_set(n, self.layers.get(i).into_iter().flatten().copied())
    }
}

/// Two disjoint vertex subsets of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSetPair {
    x: VertexSet,
    y: VertexSet,
}

impl VertexSetPair {
    pub fn new(n: usize, x: VertexSet, y: VertexSet) -> Result<Self> {
        let (mut x, mut y) = (x, y);
        if let Some(v) = x.ones().chain(y.ones()).find(|&v| v >= n) {
            return param(format!("vertex {v} out of range for n = {n}"));
        }
        x.grow(n);
        y.grow(n);
        if !x.is_disjoint(&y) {
            let v = x.intersection(&y).next().unwrap();
            return param(format!("vertex sets overlap at vertex {v}"));
        }
        Ok(VertexSetPair { x, y })
    }

    pub fn from_vertices(
        n: usize,
        x: impl IntoIterator<Item = usize>,
        y: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let x: Vec<usize> = x.into_iter().collect();
        let y: Vec<usize> = y.into_iter().collect();
        if let Some(v) = x.iter().chain(&y).find(|&&v| v >= n) {
            return param(format!("vertex {v} out of range for n = {n}"));
        }
        Self::new(n, vertex_set(n, x), vertex_set(n, y))
    }

    pub fn x(&self) -> &VertexSet {
        &self.x
    }

    pub fn y(&self) -> &VertexSet {
        &self.y
    }
}

/// Output of [`Graph::edge_counts`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeCounts {
    pub inside_x: usize,
    pub inside_y: usize,
    pub cross: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        construct_named(Family::Cycle, &[n]).unwrap()
    }

    #[test]
    fn from_edges_rejects_loops_and_range() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn join_and_union_examples() {
        let k2 = construct_named(Family::Complete, &[2]).unwrap();
        let e3 = Graph::empty(3);
        let s52 = k2.join(&e3);
        assert_eq!((s52.n(), s52.m()), (5, 7));
        assert_eq!(s52, construct_named(Family::SNk, &[5, 2]).unwrap());

        let k2_single = Graph::empty(1).join(&Graph::empty(1));
        assert_eq!(k2_single, k2);

        let e4_plus = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert_eq!(k2.join(&e4_plus), construct_named(Family::SNkPlus, &[6, 2]).unwrap());

        let u = k2.disjoint_union(&Graph::empty(2));
        assert_eq!((u.n(), u.m()), (4, 1));
        let c4c4 = cycle(4).disjoint_union(&cycle(4));
        assert_eq!((c4c4.n(), c4c4.m()), (8, 8));
        let g = cycle(5);
        assert_eq!(Graph::empty(0).disjoint_union(&g), g);
    }

    #[test]
    fn bfs_layer_examples() {
        let p3 = construct_named(Family::Path, &[3]).unwrap();
        let l = p3.bfs_layers(1).unwrap();
        assert_eq!(l.layers, vec![vec![1], vec![0, 2]]);
        assert_eq!(cycle(6).bfs_layers(4).unwrap().sizes(), vec![1, 2, 2, 1]);
        let s = construct_named(Family::SNk, &[10, 3]).unwrap();
        assert_eq!(s.bfs_layers(0).unwrap().size(1), 9);
        assert!(s.bfs_layers(10).is_err());
    }

    #[test]
    fn edge_count_examples() {
        let k4 = construct_named(Family::Complete, &[4]).unwrap();
        let p = VertexSetPair::from_vertices(4, [0, 1], [2, 3]).unwrap();
        let c = k4.edge_counts(&p);
        assert_eq!((c.inside_x, c.inside_y, c.cross), (1, 1, 4));

        let p = VertexSetPair::from_vertices(6, [0, 2, 4], [1, 3, 5]).unwrap();
        let c = cycle(6).edge_counts(&p);
        assert_eq!((c.inside_x, c.inside_y, c.cross), (0, 0, 6));

        let s = construct_named(Family::SNk, &[8, 2]).unwrap();
        let p = VertexSetPair::from_vertices(8, 0..2, 2..8).unwrap();
        let c = s.edge_counts(&p);
        assert_eq!((c.inside_x, c.inside_y, c.cross), (1, 0, 12));
    }

    #[test]
    fn overlapping_pair_is_rejected() {
        assert!(VertexSetPair::from_vertices(4, [0, 1], [1, 2]).is_err());
        assert!(VertexSetPair::from_vertices(4, [0, 1], [5]).is_err());
    }

    #[test]
    fn edits_return_new_graphs() {
        let g = cycle(5);
        let h = g.with_edge(0, 2).unwrap();
        assert_eq!(g.m(), 5);
        assert_eq!(h.m(), 6);
        assert_eq!(h.without_edge(0, 2), g);
        assert!(g.with_edge(1, 1).is_err());
    }

    #[test]
    fn components_of_disconnected_graph() {
        let g = cycle(3).disjoint_union(&Graph::empty(2));
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3], vec![4]]);
        assert!(!g.is_connected());
    }
}
