//! Canonical forms for small graphs.
//!
//! The code of a labeled graph is its upper triangle read column by column,
//! `x(0,1) x(0,2) x(1,2) x(0,3) …`, the same bit order graph6 uses. The
//! canonical form is the relabeling with the lexicographically smallest
//! code. Because the code of the first `n - 1` vertices is a prefix of the
//! code of all `n`, deleting the last vertex of a canonical graph leaves a
//! canonical graph, which is what orderly generation relies on.
//!
//! The permutation search fixes images one position at a time, compares a
//! whole column at once, and skips candidates that are twins of a sibling
//! already explored (swapping twins is an automorphism, so both subtrees
//! produce the same codes).

use std::cmp::Ordering;

use fixedbitset::FixedBitSet;

use crate::error::{param, Result};
use crate::graph::Graph;

/// Largest order handled by [`SmallGraph`].
pub const SMALL_MAX_N: usize = 16;

/// Graph on at most 16 vertices with one `u16` row per vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SmallGraph {
    n: u8,
    adj: [u16; SMALL_MAX_N],
}

impl SmallGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= SMALL_MAX_N);
        SmallGraph {
            n: n as u8,
            adj: [0; SMALL_MAX_N],
        }
    }

    pub fn from_graph(g: &Graph) -> Result<Self> {
        if g.n() > SMALL_MAX_N {
            return param(format!("small-graph routines support n <= {SMALL_MAX_N}, got {}", g.n()));
        }
        let mut s = SmallGraph::empty(g.n());
        for (u, v) in g.edges() {
            s.add_edge(u, v);
        }
        Ok(s)
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let rows = (0..n)
            .map(|u| {
                let mut r = FixedBitSet::with_capacity(n);
                r.extend(ones(self.adj[u]));
                r
            })
            .collect();
        Graph::from_rows(rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn row(&self, u: usize) -> u16 {
        self.adj[u]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n()].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Appends a vertex adjacent to the vertices in `mask`.
    pub fn with_new_vertex(&self, mask: u16) -> Self {
        let mut g = *self;
        let v = self.n();
        g.n += 1;
        g.adj[v] = mask;
        for u in ones(mask) {
            g.adj[u] |= 1 << v;
        }
        g
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut g = SmallGraph::empty(self.n());
        for u in 0..self.n() {
            for v in ones(self.adj[u]) {
                g.adj[perm[u]] |= 1 << perm[v];
            }
        }
        g
    }

    /// Column `j` of the code as an integer whose most significant bit is `x(0, j)`.
    #[inline]
    fn column(&self, j: usize) -> u16 {
        let mut c = 0u16;
        for i in 0..j {
            c = (c << 1) | (self.adj[i] >> j & 1);
        }
        c
    }

    /// Packed code, `x(0,1)` in the most significant used bit. `n <= 11` fits.
    pub fn code(&self) -> u64 {
        let mut c = 0u64;
        for j in 1..self.n() {
            c = (c << j) | u64::from(self.column(j));
        }
        c
    }

    fn twin_masks(&self) -> [u16; SMALL_MAX_N] {
        let n = self.n();
        let mut t = [0u16; SMALL_MAX_N];
        for v in 0..n {
            for w in 0..n {
                if v != w && self.adj[v] & !(1 << w) == self.adj[w] & !(1 << v) {
                    t[v] |= 1 << w;
                }
            }
        }
        t
    }

    /// True if no relabeling gives a lexicographically smaller code.
    pub fn is_canonical(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        let cols: Vec<u16> = (0..n).map(|j| self.column(j)).collect();
        let mut search = PermSearch::new(self);
        !search.finds_smaller(&cols, 0)
    }

    /// Canonical relabeling and the permutation producing it
    /// (`perm[old] = new`).
    pub fn canonical_form(&self) -> (SmallGraph, Vec<usize>) {
        let n = self.n();
        if n <= 1 {
            return (*self, (0..n).collect());
        }
        let mut search = PermSearch::new(self);
        let mut best = MinState {
            cols: vec![u16::MAX; n],
            order: Vec::new(),
            version: 0,
        };
        search.minimize(&mut best, 0, false);
        // order[new] = old
        let mut perm = vec![0; n];
        for (new, &old) in best.order.iter().enumerate() {
            perm[old] = new;
        }
        (self.permute(&perm), perm)
    }
}

#[inline]
fn ones(mut mask: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

struct MinState {
    cols: Vec<u16>,
    order: Vec<usize>,
    version: u64,
}

/// Backtracking over partial relabelings: `order[d]` is the old vertex
/// placed at new position `d`; `colval[d][v]` is the column `d` would have
/// if `v` were placed there.
struct PermSearch<'a> {
    g: &'a SmallGraph,
    n: usize,
    twins: [u16; SMALL_MAX_N],
    order: Vec<usize>,
    used: u16,
    colval: Vec<[u16; SMALL_MAX_N]>,
}

impl<'a> PermSearch<'a> {
    fn new(g: &'a SmallGraph) -> Self {
        let n = g.n();
        PermSearch {
            g,
            n,
            twins: g.twin_masks(),
            order: Vec::with_capacity(n),
            used: 0,
            colval: vec![[0; SMALL_MAX_N]; n + 1],
        }
    }

    /// Fills `colval[d + 1]` after `order[d]` has been fixed.
    #[inline]
    fn advance(&mut self, d: usize) {
        let p = self.order[d];
        let row = self.g.adj[p];
        for v in 0..self.n {
            self.colval[d + 1][v] = (self.colval[d][v] << 1) | (row >> v & 1);
        }
    }

    fn finds_smaller(&mut self, cols: &[u16], d: usize) -> bool {
        if d == self.n {
            return false;
        }
        let target = cols[d];
        let mut explored = 0u16;
        for v in 0..self.n {
            if self.used >> v & 1 == 1 {
                continue;
            }
            let c = self.colval[d][v];
            match c.cmp(&target) {
                Ordering::Less => return true,
                Ordering::Greater => continue,
                Ordering::Equal => {}
            }
            if explored & self.twins[v] != 0 {
                continue;
            }
            explored |= 1 << v;
            self.order.push(v);
            self.used |= 1 << v;
            self.advance(d);
            let found = self.finds_smaller(cols, d + 1);
            self.order.pop();
            self.used &= !(1 << v);
            if found {
                return true;
            }
        }
        false
    }

    /// `below` is true when the current prefix is already smaller than the
    /// best prefix.
    fn minimize(&mut self, best: &mut MinState, d: usize, below: bool) {
        if d == self.n {
            best.cols.clear();
            best.cols.extend((0..self.n).map(|j| self.colval[j][self.order[j]]));
            best.order.clone_from(&self.order);
            best.version += 1;
            return;
        }
        let mut below = below;
        let mut explored = 0u16;
        for v in 0..self.n {
            if self.used >> v & 1 == 1 || explored & self.twins[v] != 0 {
                continue;
            }
            let c = self.colval[d][v];
            let child_below = if below {
                true
            } else {
                match c.cmp(&best.cols[d]) {
                    Ordering::Greater => continue,
                    Ordering::Less => true,
                    Ordering::Equal => false,
                }
            };
            explored |= 1 << v;
            self.order.push(v);
            self.used |= 1 << v;
            self.advance(d);
            let before = best.version;
            self.minimize(best, d + 1, child_below);
            self.order.pop();
            self.used &= !(1 << v);
            if best.version != before {
                // the new best shares this node's prefix
                below = false;
            }
        }
    }
}

/// Canonical relabeling of a graph on at most 16 vertices.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    Ok(SmallGraph::from_graph(g)?.canonical_form().0.to_graph())
}

/// Isomorphism test for graphs of any order: colour refinement followed by
/// backtracking, with twin pruning on the target side.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let n = a.n();
    if n <= SMALL_MAX_N {
        let ca = SmallGraph::from_graph(a).unwrap().canonical_form().0;
        let cb = SmallGraph::from_graph(b).unwrap().canonical_form().0;
        return ca == cb;
    }
    let (col_a, col_b) = refine_pair(a, b);
    let mut hist_a = col_a.clone();
    let mut hist_b = col_b.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return false;
    }
    // map vertices of `a` in BFS order so each new vertex touches mapped ones
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for comp in a.components() {
        let layers = a.bfs_layers(comp[0]).unwrap();
        for l in layers.layers {
            for v in l {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
    }
    let twins_b = twin_lists(b);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    iso_extend(a, b, &col_a, &col_b, &twins_b, &order, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn iso_extend(
    a: &Graph,
    b: &Graph,
    col_a: &[usize],
    col_b: &[usize],
    twins_b: &[Vec<usize>],
    order: &[usize],
    d: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if d == order.len() {
        return true;
    }
    let v = order[d];
    let mut tried: Vec<usize> = Vec::new();
    for w in 0..b.n() {
        if used[w] || col_b[w] != col_a[v] {
            continue;
        }
        if tried.iter().any(|&t| twins_b[t].contains(&w)) {
            continue;
        }
        let consistent = order[..d]
            .iter()
            .all(|&u| a.has_edge(u, v) == b.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        tried.push(w);
        map[v] = w;
        used[w] = true;
        if iso_extend(a, b, col_a, col_b, twins_b, order, d + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

fn twin_lists(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|v| {
            (0..g.n())
                .filter(|&w| {
                    if w == v {
                        return false;
                    }
                    let mut rv = g.row(v).clone();
                    let mut rw = g.row(w).clone();
                    rv.set(w, false);
                    rw.set(v, false);
                    rv == rw
                })
                .collect()
        })
        .collect()
}

/// Joint colour refinement of two graphs so colours are comparable.
fn refine_pair(a: &Graph, b: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut ca: Vec<usize> = a.degrees();
    let mut cb: Vec<usize> = b.degrees();
    loop {
        let sig = |g: &Graph, c: &[usize], v: usize| {
            let mut s: Vec<usize> = g.neighbors(v).iter().map(|&w| c[w]).collect();
            s.sort_unstable();
            (c[v], s)
        };
        let sa: Vec<_> = (0..a.n()).map(|v| sig(a, &ca, v)).collect();
        let sb: Vec<_> = (0..b.n()).map(|v| sig(b, &cb, v)).collect();
        let mut all: Vec<_> = sa.iter().chain(&sb).cloned().collect();
        all.sort();
        all.dedup();
        let idx = |s: &(usize, Vec<usize>)| all.binary_search(s).unwrap();
        let na: Vec<usize> = sa.iter().map(idx).collect();
        let nb: Vec<usize> = sb.iter().map(idx).collect();
        let classes_before = count_distinct(&ca) + count_distinct(&cb);
        let classes_after = count_distinct(&na) + count_distinct(&nb);
        ca = na;
        cb = nb;
        if classes_after == classes_before {
            return (ca, cb);
        }
    }
}

fn count_distinct(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}
