use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use super::Graph;
use crate::error::{param, Error, Result};

/// Named graph families.
///
/// Labeling conventions: `SNk` puts the clique on `0..k`; `SNkPlus` also
/// adds the edge `{k, k+1}`; bipartite and Turán parts are contiguous
/// blocks, larger Turán parts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Empty,
    Complete,
    Path,
    Cycle,
    CompleteBipartite,
    Turan,
    SNk,
    SNkPlus,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Empty,
        Family::Complete,
        Family::Path,
        Family::Cycle,
        Family::CompleteBipartite,
        Family::Turan,
        Family::SNk,
        Family::SNkPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Empty => "empty",
            Family::Complete => "complete",
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::CompleteBipartite => "complete_bipartite",
            Family::Turan => "turan",
            Family::SNk => "s_nk",
            Family::SNkPlus => "s_nk_plus",
        }
    }

    /// Parameter names, in positional order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Family::Empty | Family::Complete | Family::Path | Family::Cycle => &["n"],
            Family::CompleteBipartite => &["a", "b"],
            Family::Turan => &["n", "r"],
            Family::SNk | Family::SNkPlus => &["n", "k"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown family '{s}'")))
    }
}

/// Builds a named graph from positional integer parameters.
pub fn construct_named(family: Family, params: &[usize]) -> Result<Graph> {
    let want = family.params();
    if params.len() != want.len() {
        return param(format!(
            "{family} takes {} parameter(s) ({}), got {}",
            want.len(),
            want.join(", "),
            params.len()
        ));
    }
    match family {
        Family::Empty => Ok(Graph::empty(params[0])),
        Family::Complete => Ok(complete(params[0])),
        Family::Path => {
            let n = params[0];
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        Family::Cycle => {
            let n = params[0];
            if n < 3 {
                return param(format!("cycle requires n >= 3, got n = {n}"));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::CompleteBipartite => Ok(Graph::empty(params[0]).join(&Graph::empty(params[1]))),
        Family::Turan => {
            let (n, r) = (params[0], params[1]);
            if r == 0 {
                return param("turan requires r >= 1");
            }
            Ok(turan(n, r))
        }
        Family::SNk => {
            let (n, k) = (params[0], params[1]);
            if k < 1 || n <= k {
                return param(format!("s_nk requires n > k >= 1, got n = {n}, k = {k}"));
            }
            Ok(complete(k).join(&Graph::empty(n - k)))
        }
        Family::SNkPlus => {
            let (n, k) = (params[0], params[1]);
            if k < 1 || n < k + 2 {
                return param(format!("s_nk_plus requires k >= 1 and n >= k + 2, got n = {n}, k = {k}"));
            }
            let rest = Graph::from_edges(n - k, [(0, 1)])?;
            Ok(complete(k).join(&rest))
        }
    }
}

fn complete(n: usize) -> Graph {
    let rows = (0..n)
        .map(|u| {
            let mut r = FixedBitSet::with_capacity(n);
            r.insert_range(..);
            r.set(u, false);
            r
        })
        .collect();
    Graph::from_rows(rows)
}

fn turan(n: usize, r: usize) -> Graph {
    let mut part = vec![0usize; n];
    let (q, extra) = (n / r, n % r);
    let mut v = 0;
    for p in 0..r {
        let size = q + usize::from(p < extra);
        for _ in 0..size {
            part[v] = p;
            v += 1;
        }
    }
    let rows = (0..n)
        .map(|u| {
            let mut row = FixedBitSet::with_capacity(n);
            row.extend((0..n).filter(|&w| part[w] != part[u]));
            row
        })
        .collect();
    Graph::from_rows(rows)
}

/// Closed-form edge count of the Turán graph `T_r(n)`.
#[cfg(test)]
pub(crate) fn turan_edge_count(n: usize, r: usize) -> usize {
    let (q, extra) = (n / r, n % r);
    let sum_sq = extra * (q + 1) * (q + 1) + (r - extra) * q * q;
    (n * n - sum_sq) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binom2(k: usize) -> usize {
        k * k.saturating_sub(1) / 2
    }

    #[test]
    fn named_examples() {
        assert_eq!(construct_named(Family::SNk, &[10, 3]).unwrap().m(), 24);
        assert_eq!(construct_named(Family::SNkPlus, &[6, 2]).unwrap().m(), 10);
        let star = construct_named(Family::SNk, &[7, 1]).unwrap();
        assert_eq!(star, construct_named(Family::CompleteBipartite, &[1, 6]).unwrap());
        assert_eq!(star.degree(0), 6);
    }

    #[test]
    fn labeling_conventions() {
        let g = construct_named(Family::SNkPlus, &[8, 3]).unwrap();
        assert!(g.has_edge(3, 4));
        assert!(!g.has_edge(4, 5));
        assert!((0..3).all(|c| g.degree(c) == 7));
    }

    #[test]
    fn parameter_errors_name_the_constraint() {
        let e = construct_named(Family::SNk, &[3, 3]).unwrap_err().to_string();
        assert!(e.contains("n > k"), "{e}");
        let e = construct_named(Family::SNkPlus, &[4, 3]).unwrap_err().to_string();
        assert!(e.contains("n >= k + 2"), "{e}");
        assert!(construct_named(Family::SNk, &[5]).is_err());
        assert!(construct_named(Family::Cycle, &[2]).is_err());
        assert!(construct_named(Family::Turan, &[5, 0]).is_err());
        assert!("bogus".parse::<Family>().is_err());
        assert_eq!("s_nk_plus".parse::<Family>().unwrap(), Family::SNkPlus);
    }

    proptest! {
        #[test]
        fn family_edge_counts_match_closed_forms(n in 2usize..40, k in 1usize..8, r in 1usize..7) {
            if n > k {
                let g = construct_named(Family::SNk, &[n, k]).unwrap();
                prop_assert_eq!(g.m(), binom2(k) + k * (n - k));
                prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
            }
            if n >= k + 2 {
                let g = construct_named(Family::SNkPlus, &[n, k]).unwrap();
                prop_assert_eq!(g.m(), binom2(k) + k * (n - k) + 1);
            }
            let t = construct_named(Family::Turan, &[n, r]).unwrap();
            prop_assert_eq!(t.m(), turan_edge_count(n, r));
        }

        #[test]
        fn join_and_union_arithmetic(a in 0usize..8, b in 0usize..8, c in 0usize..8) {
            let g = construct_named(Family::Path, &[a]).unwrap();
            let h = construct_named(Family::Complete, &[b]).unwrap();
            let f = if c >= 2 { Graph::empty(c).with_edge(0, 1).unwrap() } else { Graph::empty(c) };
            let j = g.join(&h);
            prop_assert_eq!(j.n(), a + b);
            prop_assert_eq!(j.m(), g.m() + h.m() + a * b);
            let u = g.disjoint_union(&h);
            prop_assert_eq!(u.m(), g.m() + h.m());
            // associativity holds on the nose with our relabeling convention
            prop_assert_eq!(g.join(&h).join(&f), g.join(&h.join(&f)));
            prop_assert_eq!(g.disjoint_union(&h).disjoint_union(&f), g.disjoint_union(&h.disjoint_union(&f)));
        }
    }

}
