//! Exact detection of fixed-length paths and cycles, with witnesses.
//!
//! The search is a depth-first extension of simple paths over bit rows.
//! Two reductions keep it exhaustive yet small on the highly symmetric
//! graphs this crate cares about:
//!
//! * Twin classes. Vertices with equal open (or equal closed)
//!   neighborhoods can be permuted by an automorphism, so it suffices to
//!   use the members of each class in a fixed order: a vertex may join the
//!   path only if it is the smallest unused member of its class.
//! * Reachability. A partial path is dropped when the vertices still
//!   reachable from its end cannot supply the missing length or the
//!   required endpoint.
//!
//! For cycles the start is anchored at the first member of the smallest
//! class on the cycle, which removes the rotational redundancy.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::graph::{Graph, VertexSet};

/// Set of forbidden cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForbiddenFamily {
    lengths: Vec<usize>,
}

impl ForbiddenFamily {
    pub fn new(lengths: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut lengths: Vec<usize> = lengths.into_iter().collect();
        if lengths.is_empty() {
            return param("forbidden family must list at least one cycle length");
        }
        if let Some(&l) = lengths.iter().find(|&&l| l < 3) {
            return param(format!("cycle length {l} is below 3"));
        }
        lengths.sort_unstable();
        lengths.dedup();
        Ok(ForbiddenFamily { lengths })
    }

    /// `{C_{2k+2}}`.
    pub fn even_only(k: usize) -> Result<Self> {
        Self::new([2 * k + 2])
    }

    /// `{C_{2k+1}, C_{2k+2}}`.
    pub fn both(k: usize) -> Result<Self> {
        Self::new([2 * k + 1, 2 * k + 2])
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn contains_length(&self, ell: usize) -> bool {
        self.lengths.binary_search(&ell).is_ok()
    }
}

impl fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.lengths.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "C{l}")?;
        }
        Ok(())
    }
}

impl FromStr for ForbiddenFamily {
    type Err = Error;

    /// Parses comma-separated tokens such as `C5,C6`. `K3` is accepted as
    /// an alias of `C3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut lengths = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let len = match tok.as_bytes()[0] {
                b'C' | b'c' => tok[1..].parse::<usize>().ok(),
                b'K' | b'k' if &tok[1..] == "3" => Some(3),
                _ => None,
            };
            match len {
                Some(l) => lengths.push(l),
                None => return param(format!("bad forbidden-cycle token '{tok}'")),
            }
        }
        Self::new(lengths)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Path,
    Cycle,
}

/// A path or cycle certifying a detection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgraphWitness {
    pub kind: WitnessKind,
    pub vertices: Vec<usize>,
}

impl SubgraphWitness {
    /// Checks adjacency along the sequence, distinctness, the closing edge for
    /// cycles, the exact order, and endpoint membership when `ends` is given.
    pub fn validate(&self, g: &Graph, order: usize, ends: Option<&VertexSet>) -> bool {
        let vs = &self.vertices;
        if vs.len() != order || vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut seen = FixedBitSet::with_capacity(g.n());
        for &v in vs {
            if seen.put(v) {
                return false;
            }
        }
        if !vs.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return false;
        }
        match self.kind {
            WitnessKind::Cycle => vs.len() >= 3 && g.has_edge(vs[0], vs[vs.len() - 1]),
            WitnessKind::Path => ends.map_or(true, |u| {
                !vs.is_empty() && u.contains(vs[0]) && u.contains(vs[vs.len() - 1])
            }),
        }
    }
}

/// A path on exactly `ell` vertices, if any.
pub fn contains_path(g: &Graph, ell: usize) -> Option<SubgraphWitness> {
    if ell == 0 || ell > g.n() {
        return None;
    }
    Search::new(g, ell, Goal::AnyEnd, &[], None).run_paths()
}

/// A cycle on exactly `ell` vertices, if any.
pub fn contains_cycle(g: &Graph, ell: usize) -> Option<SubgraphWitness> {
    if ell < 3 || ell > g.n() {
        return None;
    }
    Search::new(g, ell, Goal::Cycle, &[], None).run_cycles()
}

/// A path on `ell` vertices whose two ends lie in `ends`.
pub fn contains_path_with_endpoints_in(g: &Graph, ends: &VertexSet, ell: usize) -> Option<SubgraphWitness> {
    if ell < 2 || ell > g.n() {
        return None;
    }
    Search::new(g, ell, Goal::EndIn, &[], Some(ends)).run_paths()
}

/// A path on `ell` vertices from `a` to `b`.
pub fn contains_path_between(g: &Graph, a: usize, b: usize, ell: usize) -> Option<SubgraphWitness> {
    if ell < 2 || ell > g.n() || a == b || a >= g.n() || b >= g.n() {
        return None;
    }
    let mut s = Search::new(g, ell, Goal::EndAt(b), &[a, b], None);
    s.start_from(a);
    s.finish(WitnessKind::Path)
}

/// Whether any cycle length of `family` embeds, with a witness when it does.
pub fn is_family_free(g: &Graph, family: &ForbiddenFamily) -> (bool, Option<SubgraphWitness>) {
    match family_violation(g, family) {
        Some(w) => (false, Some(w)),
        None => (true, None),
    }
}

/// First forbidden cycle found, scanning lengths in increasing order.
pub fn family_violation(g: &Graph, family: &ForbiddenFamily) -> Option<SubgraphWitness> {
    family.lengths().iter().find_map(|&l| contains_cycle(g, l))
}

/// Largest `ell` such that `g` contains a path on `ell` vertices.
pub fn longest_path_order(g: &Graph) -> usize {
    let mut best = 0;
    while best < g.n() && contains_path(g, best + 1).is_some() {
        best += 1;
    }
    best
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    AnyEnd,
    Cycle,
    EndIn,
    EndAt(usize),
}

struct Search<'a> {
    g: &'a Graph,
    ell: usize,
    goal: Goal,
    ends: Option<&'a VertexSet>,
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    used_in_class: Vec<usize>,
    used: FixedBitSet,
    allowed: FixedBitSet,
    path: Vec<usize>,
    found: bool,
    // scratch for the reachability prune
    avail: FixedBitSet,
    visited: FixedBitSet,
    next_set: FixedBitSet,
    frontier: Vec<usize>,
    cand_stack: Vec<FixedBitSet>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, ell: usize, goal: Goal, pinned: &[usize], ends: Option<&'a VertexSet>) -> Self {
        let (class_of, members) = twin_classes(g, ends, pinned);
        let n = g.n();
        let mut allowed = FixedBitSet::with_capacity(n);
        allowed.insert_range(..);
        Search {
            g,
            ell,
            goal,
            ends,
            used_in_class: vec![0; members.len()],
            class_of,
            members,
            used: FixedBitSet::with_capacity(n),
            allowed,
            path: Vec::with_capacity(ell),
            found: false,
            avail: FixedBitSet::with_capacity(n),
            visited: FixedBitSet::with_capacity(n),
            next_set: FixedBitSet::with_capacity(n),
            frontier: Vec::with_capacity(n),
            cand_stack: vec![FixedBitSet::with_capacity(n); ell + 1],
        }
    }

    fn run_paths(mut self) -> Option<SubgraphWitness> {
        for c in 0..self.members.len() {
            let s = self.members[c][0];
            if self.goal == Goal::EndIn && !self.ends.is_some_and(|u| u.contains(s)) {
                continue;
            }
            self.start_from(s);
            if self.found {
                return self.finish(WitnessKind::Path);
            }
        }
        None
    }

    fn run_cycles(mut self) -> Option<SubgraphWitness> {
        for c in 0..self.members.len() {
            let s = self.members[c][0];
            if self.g.degree(s) < 2 {
                continue;
            }
            self.allowed.clear();
            for v in 0..self.g.n() {
                if self.class_of[v] >= c && self.g.degree(v) >= 2 {
                    self.allowed.insert(v);
                }
            }
            if self.allowed.count_ones(..) < self.ell {
                continue;
            }
            self.start_from(s);
            if self.found {
                return self.finish(WitnessKind::Cycle);
            }
        }
        None
    }

    fn finish(self, kind: WitnessKind) -> Option<SubgraphWitness> {
        self.found.then(|| SubgraphWitness {
            kind,
            vertices: self.path,
        })
    }

    fn start_from(&mut self, s: usize) {
        self.push(s);
        self.extend();
        if !self.found {
            self.pop();
        }
    }

    fn push(&mut self, v: usize) {
        self.path.push(v);
        self.used.insert(v);
        self.used_in_class[self.class_of[v]] += 1;
    }

    fn pop(&mut self) {
        let v = self.path.pop().unwrap();
        self.used.set(v, false);
        self.used_in_class[self.class_of[v]] -= 1;
    }

    fn accepts_end(&self, v: usize) -> bool {
        match self.goal {
            Goal::AnyEnd => true,
            Goal::Cycle => self.g.has_edge(v, self.path[0]),
            Goal::EndIn => self.ends.is_some_and(|u| u.contains(v)),
            Goal::EndAt(b) => v == b,
        }
    }

    fn extend(&mut self) {
        if self.path.len() == self.ell {
            self.found = self.accepts_end(*self.path.last().unwrap());
            return;
        }
        let remaining = self.ell - self.path.len();
        let last = *self.path.last().unwrap();
        if remaining >= 2 && !self.reachable_enough(last, remaining) {
            return;
        }
        let depth = self.path.len();
        let mut cand = std::mem::take(&mut self.cand_stack[depth]);
        cand.clone_from(self.g.row(last));
        cand.intersect_with(&self.allowed);
        cand.difference_with(&self.used);
        for w in cand.ones() {
            let c = self.class_of[w];
            if self.members[c][self.used_in_class[c]] != w {
                continue;
            }
            if remaining == 1 {
                if !self.accepts_end(w) {
                    continue;
                }
            } else if matches!(self.goal, Goal::EndAt(b) if b == w) {
                continue;
            }
            self.push(w);
            self.extend();
            if self.found {
                return;
            }
            self.pop();
        }
        self.cand_stack[depth] = cand;
    }

    /// BFS from `last` through unused allowed vertices: at least `remaining`
    /// of them must be reachable, and a legal endpoint within `remaining` steps.
    fn reachable_enough(&mut self, last: usize, remaining: usize) -> bool {
        self.avail.clone_from(&self.allowed);
        self.avail.difference_with(&self.used);
        self.visited.clear();
        self.frontier.clear();
        self.frontier.push(last);
        let mut reached = 0usize;
        let mut endpoint_ok = false;
        let mut depth = 0;
        while !self.frontier.is_empty() && !(endpoint_ok && reached >= remaining) {
            depth += 1;
            self.next_set.clear();
            for &v in &self.frontier {
                self.next_set.union_with(self.g.row(v));
            }
            self.next_set.intersect_with(&self.avail);
            self.next_set.difference_with(&self.visited);
            self.visited.union_with(&self.next_set);
            self.frontier.clear();
            self.frontier.extend(self.next_set.ones());
            reached += self.frontier.len();
            if !endpoint_ok && depth <= remaining {
                endpoint_ok = self.frontier.iter().any(|&t| self.accepts_end(t));
            }
        }
        endpoint_ok && reached >= remaining
    }
}

/// Partitions vertices into classes of interchangeable twins. Vertices in
/// `pinned` are singletons; when `ends` is given, classes do not mix
/// members and non-members. Classes are numbered by their smallest vertex
/// and list members in increasing order.
fn twin_classes(g: &Graph, ends: Option<&VertexSet>, pinned: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = g.n();
    // pinned vertices carry their own id so they never share a class
    let tag = |v: usize| -> (bool, usize) {
        let pin = if pinned.contains(&v) { v } else { usize::MAX };
        (ends.is_some_and(|u| u.contains(v)), pin)
    };
    let tags: Vec<(bool, usize)> = (0..n).map(tag).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| (g.row(a).as_slice(), tags[a]).cmp(&(g.row(b).as_slice(), tags[b])));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut singles = Vec::new();
    for run in order.chunk_by(|&a, &b| tags[a] == tags[b] && g.row(a) == g.row(b)) {
        if run.len() > 1 {
            groups.push(run.to_vec());
        } else {
            singles.push(run[0]);
        }
    }
    let closed: Vec<FixedBitSet> = singles
        .iter()
        .map(|&v| {
            let mut row = g.row(v).clone();
            row.insert(v);
            row
        })
        .collect();
    let mut idx: Vec<usize> = (0..singles.len()).collect();
    idx.sort_unstable_by(|&a, &b| {
        (closed[a].as_slice(), tags[singles[a]]).cmp(&(closed[b].as_slice(), tags[singles[b]]))
    });
    for run in idx.chunk_by(|&a, &b| tags[singles[a]] == tags[singles[b]] && closed[a] == closed[b]) {
        groups.push(run.iter().map(|&i| singles[i]).collect());
    }
    for m in &mut groups {
        m.sort_unstable();
    }
    groups.sort_unstable_by_key(|m| m[0]);
    let mut class_of = vec![0; n];
    for (c, m) in groups.iter().enumerate() {
        for &v in m {
            class_of[v] = c;
        }
    }
    (class_of, groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{construct_named, vertex_set, Family};

    fn named(f: Family, p: &[usize]) -> Graph {
        construct_named(f, p).unwrap()
    }

    #[test]
    fn path_examples() {
        let c5 = named(Family::Cycle, &[5]);
        let w = contains_path(&c5, 5).unwrap();
        assert!(w.validate(&c5, 5, None));
        assert!(contains_path(&named(Family::CompleteBipartite, &[1, 9]), 4).is_none());
        // an independent vertex needs a clique vertex between it and the
        // next one, so the longest path has 2k + 1 = 5 vertices
        let s = named(Family::SNk, &[10, 2]);
        let w = contains_path(&s, 5).unwrap();
        assert!(w.validate(&s, 5, None));
        assert!(contains_path(&s, 6).is_none());
    }

    #[test]
    fn cycle_examples() {
        let k33 = named(Family::CompleteBipartite, &[3, 3]);
        assert!(contains_cycle(&k33, 6).unwrap().validate(&k33, 6, None));
        assert!(contains_cycle(&named(Family::SNkPlus, &[20, 2]), 6).is_none());
        assert!(contains_cycle(&named(Family::SNk, &[10, 2]), 5).is_none());
        assert!(contains_cycle(&named(Family::SNk, &[10, 2]), 4).is_some());
        assert!(contains_cycle(&k33, 7).is_none());
        assert!(contains_cycle(&k33, 2).is_none());
    }

    #[test]
    fn endpoint_examples() {
        let k4 = named(Family::Complete, &[4]);
        let all = vertex_set(4, 0..4);
        let w = contains_path_with_endpoints_in(&k4, &all, 3).unwrap();
        assert!(w.validate(&k4, 3, Some(&all)));

        let c6 = named(Family::Cycle, &[6]);
        assert!(contains_path_with_endpoints_in(&c6, &vertex_set(6, [0]), 3).is_none());

        let s = named(Family::SNk, &[12, 2]);
        let ind = vertex_set(12, 2..12);
        let w = contains_path_with_endpoints_in(&s, &ind, 5).unwrap();
        assert!(w.validate(&s, 5, Some(&ind)));
        // I-C-I-C-I is the longest alternation with two clique vertices
        assert!(contains_path_with_endpoints_in(&s, &ind, 6).is_none());
    }

    #[test]
    fn family_examples() {
        let f8 = ForbiddenFamily::even_only(3).unwrap();
        assert_eq!(f8.to_string(), "C8");
        assert!(is_family_free(&named(Family::SNkPlus, &[15, 3]), &f8).0);
        let c8 = named(Family::Cycle, &[8]);
        let (free, w) = is_family_free(&c8, &f8);
        assert!(!free);
        let w = w.unwrap();
        assert!(w.validate(&c8, 8, None));
        assert_eq!(w.kind, WitnessKind::Cycle);
        assert!(is_family_free(&named(Family::SNk, &[15, 3]), &ForbiddenFamily::both(3).unwrap()).0);
    }

    #[test]
    fn family_parsing() {
        let f: ForbiddenFamily = "C6, C5,C6".parse().unwrap();
        assert_eq!(f.lengths(), &[5, 6]);
        assert_eq!(f.to_string(), "C5,C6");
        assert_eq!("K3".parse::<ForbiddenFamily>().unwrap().lengths(), &[3]);
        assert!("C2".parse::<ForbiddenFamily>().is_err());
        assert!("".parse::<ForbiddenFamily>().is_err());
        assert!("P4".parse::<ForbiddenFamily>().is_err());
    }

    #[test]
    fn path_between_endpoints() {
        let c6 = named(Family::Cycle, &[6]);
        let w = contains_path_between(&c6, 0, 1, 6).unwrap();
        assert_eq!((w.vertices[0], w.vertices[5]), (0, 1));
        assert!(w.validate(&c6, 6, None));
        assert!(contains_path_between(&c6, 0, 1, 5).is_none());
        let s = named(Family::SNkPlus, &[20, 2]);
        // adding 2-4 would close a C6 through the clique and the extra edge
        assert!(contains_path_between(&s, 2, 4, 6).is_some());
        assert!(contains_path_between(&s, 4, 5, 6).is_some());
    }

    #[test]
    fn longest_path_of_split_graph() {
        assert_eq!(longest_path_order(&named(Family::SNk, &[30, 3])), 7);
        assert_eq!(longest_path_order(&named(Family::Path, &[9])), 9);
        assert_eq!(longest_path_order(&Graph::empty(4)), 1);
        assert_eq!(longest_path_order(&Graph::empty(0)), 0);
    }

    #[test]
    fn twin_classes_respect_pins_and_ends() {
        let s = named(Family::SNk, &[8, 2]);
        let (_, m) = twin_classes(&s, None, &[]);
        assert_eq!(m, vec![vec![0, 1], (2..8).collect()]);
        let (_, m) = twin_classes(&s, None, &[3]);
        assert_eq!(m, vec![vec![0, 1], vec![2, 4, 5, 6, 7], vec![3]]);
        let (_, m) = twin_classes(&s, Some(&vertex_set(8, [2, 3])), &[]);
        assert_eq!(m, vec![vec![0, 1], vec![2, 3], vec![4, 5, 6, 7]]);
    }
}
