use std::collections::HashSet;

use itertools::Itertools;
use proptest::prelude::*;
use spexgraph::extremal::{are_isomorphic, canonical_form, EnumerateOptions, GraphStream};
use spexgraph::forbidden::{contains_cycle, contains_path, contains_path_between, contains_path_with_endpoints_in};
use spexgraph::graph::vertex_set;
use spexgraph::Graph;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let pairs = (0..n).tuple_combinations::<(usize, usize)>();
    Graph::from_edges(n, pairs.zip(bits).filter(|(_, &b)| b).map(|(e, _)| e)).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn arb_graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n()
        && g.m() == h.m()
        && (0..g.n()).permutations(g.n()).any(|p| g.edges().all(|(u, v)| h.has_edge(p[u], p[v])))
}

fn brute_paths(g: &Graph, ell: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..g.n())
        .permutations(ell)
        .filter(move |p| p.windows(2).all(|w| g.has_edge(w[0], w[1])))
}

fn brute_cycle(g: &Graph, ell: usize) -> bool {
    ell >= 3 && ell <= g.n() && brute_paths(g, ell).any(|p| g.has_edge(p[0], p[ell - 1]))
}

#[test]
fn enumeration_matches_labelled_brute_force() {
    for n in 1..=6 {
        let m = n * (n - 1) / 2;
        let classes: HashSet<_> = (0u32..1 << m)
            .map(|mask| {
                let bits: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
                canonical_form(&graph_from_bits(n, &bits)).unwrap()
            })
            .collect();
        let generated: HashSet<_> = GraphStream::new(n, &EnumerateOptions::default())
            .unwrap()
            .map(|sg| sg.to_graph())
            .collect();
        assert_eq!(classes, generated, "n = {n}");
    }
}

#[test]
fn reversed_order_gives_same_count() {
    let reversed = EnumerateOptions {
        reversed: true,
        ..Default::default()
    };
    assert_eq!(GraphStream::new(7, &reversed).unwrap().count(), 1044);
    assert_eq!(GraphStream::new(7, &EnumerateOptions::default()).unwrap().count(), 1044);
}

#[test]
fn canonical_forms_are_fixed_points() {
    for sg in GraphStream::new(6, &EnumerateOptions::default()).unwrap() {
        let g = sg.to_graph();
        assert_eq!(canonical_form(&g).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn isomorphism_agrees_with_permutation_search(g in arb_graph(6), h in arb_graph(6)) {
        prop_assert_eq!(are_isomorphic(&g, &h), brute_isomorphic(&g, &h));
    }

    #[test]
    fn relabelling_preserves_canonical_form((g, perm) in arb_graph_and_perm(9)) {
        let h = g.permute(&perm);
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
    }

    #[test]
    fn path_and_cycle_search_agree_with_brute_force(g in arb_graph(7)) {
        for ell in 1..=g.n() {
            let found = contains_path(&g, ell);
            prop_assert_eq!(found.is_some(), brute_paths(&g, ell).next().is_some(), "path {}", ell);
            if let Some(w) = found {
                prop_assert!(w.validate(&g, ell, None));
            }
            let found = contains_cycle(&g, ell);
            prop_assert_eq!(found.is_some(), brute_cycle(&g, ell), "cycle {}", ell);
            if let Some(w) = found {
                prop_assert!(w.validate(&g, ell, None));
            }
        }
    }

    #[test]
    fn constrained_paths_agree_with_brute_force(g in arb_graph(7), ends in proptest::collection::vec(any::<bool>(), 7)) {
        let n = g.n();
        let set = vertex_set(n, (0..n).filter(|&v| ends[v]));
        for ell in 2..=n {
            let want = brute_paths(&g, ell).any(|p| set.contains(p[0]) && set.contains(p[ell - 1]));
            let got = contains_path_with_endpoints_in(&g, &set, ell);
            prop_assert_eq!(got.is_some(), want, "ends, order {}", ell);
            if let Some(w) = got {
                prop_assert!(w.validate(&g, ell, Some(&set)));
            }
            for (a, b) in (0..n).tuple_combinations() {
                let want = brute_paths(&g, ell).any(|p| p[0] == a && p[ell - 1] == b);
                let got = contains_path_between(&g, a, b, ell);
                prop_assert_eq!(got.is_some(), want, "{}..{} order {}", a, b, ell);
                if let Some(w) = got {
                    prop_assert!(w.validate(&g, ell, None));
                    prop_assert!(w.vertices[0] == a && w.vertices[ell - 1] == b);
                }
            }
        }
    }
}
