use crate::error::{param, Result};
use crate::graph::{Graph, VertexSet};
use crate::scalar::{ExactField, Scalar};

use super::{Constants, SpectralResult};

/// Large/small/moderate weight classes intersected with one BFS layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerClasses {
    pub large: VertexSet,
    pub small: VertexSet,
    pub moderate: VertexSet,
}

/// Per-layer classes around a chosen root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedLayers {
    pub root: usize,
    pub layers: Vec<LayerClasses>,
}

/// Vertex partition by Perron weight.
///
/// * `large` (L): entries `> alpha`; `small` (S) is its complement.
/// * `moderate` (M): entries `>= alpha / 3`.
/// * `heavy` (L′): entries `>= eta`.
/// * `exceptional` (E): vertices outside `heavy` with at most `k - 1`
///   heavy neighbors.
/// * `remaining` (R): everything else outside `heavy`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightClassification<T> {
    pub constants: Constants<T>,
    pub large: VertexSet,
    pub small: VertexSet,
    pub moderate: VertexSet,
    pub heavy: VertexSet,
    pub exceptional: VertexSet,
    pub remaining: VertexSet,
    pub rooted: Option<RootedLayers>,
}

pub fn classify_vertices<T: Scalar + ExactField>(
    g: &Graph,
    sr: &SpectralResult<T>,
    constants: &Constants<T>,
    root: Option<usize>,
) -> Result<WeightClassification<T>> {
    let n = g.n();
    if sr.perron.len() != n {
        return param(format!("Perron vector has length {}, graph has {n} vertices", sr.perron.len()));
    }
    let pick = |pred: &dyn Fn(T) -> bool| -> VertexSet {
        let mut s = VertexSet::with_capacity(n);
        s.extend((0..n).filter(|&u| pred(sr.perron[u])));
        s
    };
    let alpha = constants.alpha;
    let large = pick(&|v| v > alpha);
    let mut small = large.clone();
    small.toggle_range(..);
    let moderate = pick(&|v| v >= alpha / T::of(3.0));
    let heavy = pick(&|v| v >= constants.eta);

    let mut exceptional = VertexSet::with_capacity(n);
    let mut remaining = VertexSet::with_capacity(n);
    for u in (0..n).filter(|&u| !heavy.contains(u)) {
        if g.row(u).intersection_count(&heavy) < constants.k {
            exceptional.insert(u);
        } else {
            remaining.insert(u);
        }
    }

    let rooted = match root {
        None => None,
        Some(r) => {
            let layers = g.bfs_layers(r)?;
            let per = (0..layers.layers.len())
                .map(|i| {
                    let layer = layers.layer_set(i, n);
                    LayerClasses {
                        large: intersect(&large, &layer),
                        small: intersect(&small, &layer),
                        moderate: intersect(&moderate, &layer),
                    }
                })
                .collect();
            Some(RootedLayers { root: r, layers: per })
        }
    };

    Ok(WeightClassification {
        constants: constants.clone(),
        large,
        small,
        moderate,
        heavy,
        exceptional,
        remaining,
        rooted,
    })
}

fn intersect(a: &VertexSet, b: &VertexSet) -> VertexSet {
    let mut s = a.clone();
    s.intersect_with(b);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{construct_named, Family};
    use crate::spectral::spectral_radius;

    fn classify(g: &Graph, k: usize, root: Option<usize>) -> WeightClassification<f64> {
        let sr = spectral_radius(g, 1e-12).unwrap();
        let c = Constants::<f64>::choose(k).unwrap();
        classify_vertices(g, &sr, &c, root).unwrap()
    }

    fn subset(a: &VertexSet, b: &VertexSet) -> bool {
        a.is_subset(b)
    }

    #[test]
    fn argmax_is_always_large() {
        for g in [
            construct_named(Family::Path, &[7]).unwrap(),
            construct_named(Family::SNkPlus, &[12, 3]).unwrap(),
        ] {
            let sr = spectral_radius(&g, 1e-12).unwrap();
            let c = classify(&g, 3, None);
            assert!(c.large.contains(sr.argmax_vertex));
            assert!(c.heavy.contains(sr.argmax_vertex));
        }
    }

    #[test]
    fn vertex_transitive_graph_is_all_large() {
        let c = classify(&construct_named(Family::Cycle, &[6]).unwrap(), 2, None);
        assert_eq!(c.large.count_ones(..), 6);
        assert_eq!(c.small.count_ones(..), 0);
    }

    #[test]
    fn heavy_class_of_s_plus() {
        // at n = 20 the independent side still carries weight about 0.31 > eta
        let g = construct_named(Family::SNkPlus, &[20, 2]).unwrap();
        let c = classify(&g, 2, Some(0));
        assert_eq!(c.heavy.count_ones(..), 20);
        assert!(c.exceptional.is_clear() && c.remaining.is_clear());
        assert!(subset(&c.heavy, &c.large) && subset(&c.large, &c.moderate));
        let rooted = c.rooted.unwrap();
        assert_eq!(rooted.layers.len(), 2);
        assert_eq!(rooted.layers[1].large.count_ones(..), 19);

        // at n = 200 those entries drop to about 0.10 and only the clique stays heavy
        let g = construct_named(Family::SNkPlus, &[200, 2]).unwrap();
        let c = classify(&g, 2, None);
        assert_eq!(c.heavy.ones().collect::<Vec<_>>(), vec![0, 1]);
        assert!(c.exceptional.is_clear());
        assert_eq!(c.remaining.count_ones(..), 198);
    }

    #[test]
    fn layer_classes_match_definitions() {
        let g = construct_named(Family::Path, &[9]).unwrap();
        let c = classify(&g, 2, Some(4));
        let layers = g.bfs_layers(4).unwrap();
        for (i, lc) in c.rooted.as_ref().unwrap().layers.iter().enumerate() {
            let layer = layers.layer_set(i, 9);
            assert_eq!(lc.large, intersect(&c.large, &layer));
            assert_eq!(lc.small, intersect(&c.small, &layer));
            assert_eq!(lc.moderate, intersect(&c.moderate, &layer));
            let mut union = lc.large.clone();
            union.union_with(&lc.small);
            assert_eq!(union, layer);
        }
    }
}
