use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Iteration cap for power iteration.
pub const DEFAULT_MAX_ITERS: usize = 1_000_000;

/// Dominant eigenpair of an adjacency matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult<T> {
    /// Spectral radius.
    pub lambda: T,
    /// Perron vector scaled so that its largest entry is exactly one.
    /// Entries outside the winning component are zero.
    pub perron: Vec<T>,
    /// A vertex whose entry equals one.
    pub argmax_vertex: usize,
    /// `max_u |(A v)_u - lambda v_u|` on the winning component.
    pub residual: T,
    /// Power-iteration steps spent on the winning component.
    pub iterations: usize,
}

impl<T: Scalar> SpectralResult<T> {
    pub fn min_entry(&self) -> T {
        self.perron.iter().copied().fold(T::infinity(), T::min)
    }
}

/// Spectral radius and Perron vector via power iteration on `A + I`.
///
/// Each connected component is solved separately and the largest value is
/// reported. The shift by the identity removes the `-lambda` eigenvalue of
/// bipartite components from the dominant modulus.
pub fn spectral_radius<T: Scalar>(g: &Graph, tol: T) -> Result<SpectralResult<T>> {
    solve(g, tol, DEFAULT_MAX_ITERS, None)
}

/// Like [`spectral_radius`] but starts from `start`, usually the Perron
/// vector of a nearby graph. Non-positive entries are lifted so every
/// component gets a strictly positive start.
pub fn spectral_radius_from<T: Scalar>(g: &Graph, tol: T, start: &[T]) -> Result<SpectralResult<T>> {
    if start.len() != g.n() {
        return param(format!("start vector has length {}, expected {}", start.len(), g.n()));
    }
    solve(g, tol, DEFAULT_MAX_ITERS, Some(start))
}

/// Full-control variant with an explicit iteration cap.
pub fn spectral_radius_capped<T: Scalar>(g: &Graph, tol: T, max_iters: usize) -> Result<SpectralResult<T>> {
    solve(g, tol, max_iters, None)
}

struct ComponentSolution<T> {
    lambda: T,
    vector: Vec<T>,
    residual: T,
    iterations: usize,
}

fn solve<T: Scalar>(g: &Graph, tol: T, max_iters: usize, start: Option<&[T]>) -> Result<SpectralResult<T>> {
    let n = g.n();
    if n == 0 {
        return param("spectral radius of the empty vertex set is undefined");
    }
    if !(tol > T::zero()) {
        return param(format!("tolerance must be positive, got {tol}"));
    }
    let mut best: Option<(Vec<usize>, ComponentSolution<T>)> = None;
    for comp in g.components() {
        let sol = if comp.len() == 1 {
            ComponentSolution {
                lambda: T::zero(),
                vector: vec![T::one()],
                residual: T::zero(),
                iterations: 0,
            }
        } else {
            solve_component(g, &comp, tol, max_iters, start)?
        };
        if best.as_ref().map_or(true, |(_, b)| sol.lambda > b.lambda) {
            best = Some((comp, sol));
        }
    }
    let (comp, sol) = best.expect("n >= 1 gives at least one component");
    let mut perron = vec![T::zero(); n];
    for (&v, &x) in comp.iter().zip(&sol.vector) {
        perron[v] = x;
    }
    let argmax_vertex = comp
        .iter()
        .copied()
        .find(|&v| perron[v] == T::one())
        .unwrap_or(comp[0]);
    Ok(SpectralResult {
        lambda: sol.lambda,
        perron,
        argmax_vertex,
        residual: sol.residual,
        iterations: sol.iterations,
    })
}

fn solve_component<T: Scalar>(
    g: &Graph,
    comp: &[usize],
    tol: T,
    max_iters: usize,
    start: Option<&[T]>,
) -> Result<ComponentSolution<T>> {
    let size = comp.len();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let adj: Vec<Vec<usize>> = comp
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|&w| local[w]).collect())
        .collect();

    let mut x: Vec<T> = match start {
        Some(s) => {
            let lift = comp.iter().map(|&v| s[v]).fold(T::zero(), T::max) * T::of(1e-3);
            let lift = if lift > T::zero() { lift } else { T::one() };
            comp.iter().map(|&v| s[v].max(T::zero()) + lift).collect()
        }
        None => vec![T::one(); size],
    };
    normalize_max(&mut x);

    let mut ax = vec![T::zero(); size];
    let mut best_residual = T::infinity();
    let mut best_iterate = x.clone();
    let mut best_lambda = T::zero();
    // Switched on near convergence: plain sums carry a systematic rounding
    // bias on high-degree vertices that can keep the residual above `tol`.
    let mut precise = false;
    for it in 0..max_iters {
        let (lambda, residual) = if precise {
            for (i, nbrs) in adj.iter().enumerate() {
                let mut acc = Neumaier::new(T::zero());
                for &j in nbrs {
                    acc.add(x[j]);
                }
                ax[i] = acc.value();
            }
            let mut xx = Neumaier::new(T::zero());
            let mut xax = Neumaier::new(T::zero());
            for (&a, &b) in x.iter().zip(&ax) {
                xx.add(a * a);
                xax.add(a * b);
            }
            let lambda = xax.value() / xx.value();
            (lambda, residual_of(&x, &ax, lambda))
        } else {
            for (i, nbrs) in adj.iter().enumerate() {
                ax[i] = nbrs.iter().map(|&j| x[j]).sum();
            }
            let xx: T = x.iter().map(|&a| a * a).sum();
            let xax: T = x.iter().zip(&ax).map(|(&a, &b)| a * b).sum();
            let lambda = xax / xx;
            (lambda, residual_of(&x, &ax, lambda))
        };
        if !precise && residual <= tol * T::of(64.0) && residual > tol {
            precise = true;
            continue;
        }
        if residual <= tol {
            return Ok(ComponentSolution {
                lambda,
                vector: x,
                residual,
                iterations: it,
            });
        }
        if residual < best_residual {
            best_residual = residual;
            best_iterate.copy_from_slice(&x);
            best_lambda = lambda;
        }
        for (xi, &ai) in x.iter_mut().zip(&ax) {
            *xi = *xi + ai;
        }
        normalize_max(&mut x);
    }
    let mut embedded = vec![0.0; g.n()];
    for (&v, &val) in comp.iter().zip(&best_iterate) {
        embedded[v] = val.to_f64().unwrap_or(f64::NAN);
    }
    Err(Error::NonConvergence {
        lambda: best_lambda.to_f64().unwrap_or(f64::NAN),
        residual: best_residual.to_f64().unwrap_or(f64::NAN),
        iterations: max_iters,
        best_iterate: embedded,
    })
}

#[derive(Clone, Copy)]
struct Neumaier<T> {
    sum: T,
    comp: T,
}

impl<T: Scalar> Neumaier<T> {
    fn new(start: T) -> Self {
        Neumaier { sum: start, comp: T::zero() }
    }

    fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    fn value(&self) -> T {
        self.sum + self.comp
    }
}

fn residual_of<T: Scalar>(x: &[T], ax: &[T], lambda: T) -> T {
    x.iter()
        .zip(ax)
        .map(|(&a, &b)| (b - lambda * a).abs())
        .fold(T::zero(), T::max)
}

fn normalize_max<T: Scalar>(x: &mut [T]) {
    let mx = x.iter().copied().fold(T::zero(), T::max);
    for v in x.iter_mut() {
        *v = *v / mx;
    }
}
