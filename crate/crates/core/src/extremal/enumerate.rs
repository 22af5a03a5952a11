//! Isomorph-free enumeration by orderly augmentation.
//!
//! A graph on `n` vertices is generated from its canonical parent on
//! `n - 1` vertices by appending a vertex with every possible neighborhood,
//! and a child survives only if it is itself canonical. Each isomorphism
//! class therefore appears exactly once. The traversal is a depth-first
//! stream with an explicit stack, so memory stays proportional to `n`.

use crate::error::{Error, Result};
use crate::forbidden::ForbiddenFamily;
use crate::graph::Graph;

use super::canonical::SmallGraph;

/// Default largest `n` accepted by [`enumerate_graphs`].
pub const DEFAULT_ENUM_CAP: usize = 9;
/// Hard limit for the cap itself.
pub const MAX_ENUM_N: usize = 10;

#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    pub cap: usize,
    /// Try neighborhoods from the largest mask down instead of from 0 up.
    pub reversed: bool,
    /// Discard every partial graph containing one of these cycles.
    pub prune: Option<ForbiddenFamily>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            cap: DEFAULT_ENUM_CAP,
            reversed: false,
            prune: None,
        }
    }
}

impl EnumerateOptions {
    pub fn pruned(family: &ForbiddenFamily) -> Self {
        EnumerateOptions {
            prune: Some(family.clone()),
            ..Self::default()
        }
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Parameter("enumeration requires n >= 1".into()));
        }
        let cap = self.cap.min(MAX_ENUM_N);
        if n > cap {
            return Err(Error::Capacity { n, cap });
        }
        Ok(())
    }
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    Ok(GraphStream::new(n, &EnumerateOptions::default())?.map(|g| g.to_graph()))
}

/// Depth-first stream of canonical graphs on `target` vertices.
pub struct GraphStream {
    target: usize,
    reversed: bool,
    lengths: Vec<usize>,
    stack: Vec<Frame>,
}

struct Frame {
    g: SmallGraph,
    next: u32,
}

impl GraphStream {
    pub fn new(n: usize, opts: &EnumerateOptions) -> Result<Self> {
        opts.check(n)?;
        Ok(Self::from_root(SmallGraph::empty(1), n, opts))
    }

    /// Stream of the canonical descendants of `root` on `target` vertices.
    /// `root` must be canonical (and family-free when pruning).
    pub fn from_root(root: SmallGraph, target: usize, opts: &EnumerateOptions) -> Self {
        GraphStream {
            target,
            reversed: opts.reversed,
            lengths: opts
                .prune
                .as_ref()
                .map(|f| f.lengths().to_vec())
                .unwrap_or_default(),
            stack: vec![Frame { g: root, next: 0 }],
        }
    }
}

impl Iterator for GraphStream {
    type Item = SmallGraph;

    fn next(&mut self) -> Option<SmallGraph> {
        loop {
            let top = self.stack.last_mut()?;
            let m = top.g.n();
            if m == self.target {
                let g = top.g;
                self.stack.pop();
                return Some(g);
            }
            let count = 1u32 << m;
            if top.next == count {
                self.stack.pop();
                continue;
            }
            let mask = if self.reversed {
                count - 1 - top.next
            } else {
                top.next
            } as u16;
            top.next += 1;
            let child = top.g.with_new_vertex(mask);
            if self.lengths.iter().any(|&l| has_cycle_through_last(&child, l)) {
                continue;
            }
            if child.is_canonical() {
                self.stack.push(Frame { g: child, next: 0 });
            }
        }
    }
}

/// All canonical graphs on `level` vertices, for splitting work into shards.
pub fn shard_roots(level: usize, opts: &EnumerateOptions) -> Result<Vec<SmallGraph>> {
    Ok(GraphStream::new(level, opts)?.collect())
}

/// Whether `g` has a cycle on `len` vertices through its last vertex.
fn has_cycle_through_last(g: &SmallGraph, len: usize) -> bool {
    let n = g.n();
    if len < 3 || len > n {
        return false;
    }
    let v = n - 1;
    let start = g.row(v);
    if start.count_ones() < 2 {
        return false;
    }
    fn walk(g: &SmallGraph, u: usize, used: u16, left: usize, close: u16) -> bool {
        if left == 0 {
            return close >> u & 1 == 1;
        }
        let mut cand = g.row(u) & !used;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if walk(g, w, used | 1 << w, left - 1, close) {
                return true;
            }
        }
        false
    }
    // fix the lower-numbered cycle neighbor of v as the first step
    let mut first = start;
    while first != 0 {
        let a = first.trailing_zeros() as usize;
        first &= first - 1;
        let close = start & !((2u16 << a) - 1);
        if close != 0 && walk(g, a, 1 << v | 1 << a, len - 2, close) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forbidden::contains_cycle;

    fn count(n: usize, opts: &EnumerateOptions) -> usize {
        GraphStream::new(n, opts).unwrap().count()
    }

    #[test]
    fn counts_up_to_seven() {
        let expect = [1, 2, 4, 11, 34, 156, 1044];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(count(i + 1, &EnumerateOptions::default()), e, "n = {}", i + 1);
        }
    }

    #[test]
    fn streams_are_canonical_and_distinct() {
        let gs: Vec<_> = GraphStream::new(6, &EnumerateOptions::default()).unwrap().collect();
        let mut codes: Vec<u64> = gs.iter().map(|g| g.code()).collect();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), 156);
        assert!(gs.iter().all(|g| g.is_canonical()));
    }

    #[test]
    fn triangle_free_counts() {
        // OEIS A006785: 1, 2, 3, 7, 14, 38, 107, 410
        let tri = ForbiddenFamily::new([3]).unwrap();
        let got: Vec<usize> = (1..=8).map(|n| count(n, &EnumerateOptions::pruned(&tri))).collect();
        assert_eq!(got, vec![1, 2, 3, 7, 14, 38, 107, 410]);
    }

    #[test]
    fn pruned_stream_matches_filtered_stream() {
        let fam = ForbiddenFamily::new([4, 5]).unwrap();
        let pruned = count(7, &EnumerateOptions::pruned(&fam));
        let filtered = GraphStream::new(7, &EnumerateOptions::default())
            .unwrap()
            .filter(|g| {
                let g = g.to_graph();
                contains_cycle(&g, 4).is_none() && contains_cycle(&g, 5).is_none()
            })
            .count();
        assert_eq!(pruned, filtered);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_graphs(10), Err(Error::Capacity { n: 10, cap: 9 })));
        assert!(matches!(enumerate_graphs(0), Err(Error::Parameter(_))));
        let opts = EnumerateOptions {
            cap: 12,
            ..Default::default()
        };
        assert!(matches!(GraphStream::new(11, &opts), Err(Error::Capacity { n: 11, cap: 10 })));
    }
}
