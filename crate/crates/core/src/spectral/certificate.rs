use serde::Serialize;

use crate::error::{param, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Two lower bounds on the spectral radius certified by a nonnegative
/// test vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RayleighCertificate<T> {
    /// `min_{y_u > 0} (A y)_u / y_u`. Since `A y >= c y` entrywise, `lambda >= c`.
    pub min_ratio: T,
    /// `y^T A y / y^T y`.
    pub rayleigh_quotient: T,
}

impl<T: Scalar> RayleighCertificate<T> {
    /// The stronger of the two bounds.
    pub fn best(&self) -> T {
        self.min_ratio.max(self.rayleigh_quotient)
    }
}

pub fn rayleigh_certificate<T: Scalar>(g: &Graph, y: &[T]) -> Result<RayleighCertificate<T>> {
    if y.len() != g.n() {
        return param(format!("test vector has length {}, expected {}", y.len(), g.n()));
    }
    if let Some(u) = y.iter().position(|&v| v < T::zero() || v.is_nan()) {
        return param(format!("test vector entry {u} is negative"));
    }
    if y.iter().all(|&v| v == T::zero()) {
        return param("test vector is zero");
    }
    let mut min_ratio = T::infinity();
    let mut yay = T::zero();
    let mut yy = T::zero();
    for u in 0..g.n() {
        let ay: T = g.neighbors(u).iter().map(|&w| y[w]).sum();
        yay = yay + y[u] * ay;
        yy = yy + y[u] * y[u];
        if y[u] > T::zero() {
            min_ratio = min_ratio.min(ay / y[u]);
        }
    }
    Ok(RayleighCertificate {
        min_ratio,
        rayleigh_quotient: yay / yy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{construct_named, Family};
    use crate::spectral::spectral_radius;

    #[test]
    fn eigenvector_is_tight() {
        let k3 = construct_named(Family::Complete, &[3]).unwrap();
        let c = rayleigh_certificate(&k3, &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(c.min_ratio, 2.0);
        assert_eq!(c.rayleigh_quotient, 2.0);
    }

    #[test]
    fn indicator_gives_weak_bound() {
        let c4 = construct_named(Family::Cycle, &[4]).unwrap();
        let c = rayleigh_certificate(&c4, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(c.min_ratio, 0.0);
        assert!(c.best() <= 2.0);
    }

    #[test]
    fn s52_quotient_vector() {
        // per-vertex hand evaluation: clique rows give (1 + 3 * 2/3) / 1 = 3,
        // independent rows give 2 / (2/3) = 3
        let g = construct_named(Family::SNk, &[5, 2]).unwrap();
        let y = [1.0f64, 1.0, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0];
        let c = rayleigh_certificate(&g, &y).unwrap();
        assert!((c.min_ratio - 3.0).abs() < 1e-12);
        let lambda = spectral_radius(&g, 1e-12f64).unwrap().lambda;
        assert!(c.min_ratio <= lambda + 1e-12);
        assert!((lambda - 3.0).abs() < 1e-11);
    }

    #[test]
    fn rejects_bad_vectors() {
        let g = construct_named(Family::Path, &[3]).unwrap();
        assert!(rayleigh_certificate(&g, &[0.0, 0.0, 0.0]).is_err());
        assert!(rayleigh_certificate(&g, &[1.0, -1.0, 0.0]).is_err());
        assert!(rayleigh_certificate(&g, &[1.0, 1.0]).is_err());
    }
}
