use serde::Serialize;

use crate::error::{param, Result};
use crate::scalar::ExactField;

/// Thresholds `(eta, epsilon, alpha, delta)` for a fixed `k`.
///
/// `eta` bounds the heavy class, `alpha` the large class; `epsilon` and
/// `delta` are the slack parameters of the degree estimates. With
/// `T = BigRational` every field is exact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constants<T> {
    pub k: usize,
    pub eta: T,
    pub epsilon: T,
    pub alpha: T,
    pub delta: T,
}

/// Upper bound for `eta`: `min{1/(k+1), 1 - 1/(16k^3), 1/4 - 1/(16k^2)}`.
pub fn eta_bound<T: ExactField>(k: usize) -> T {
    let k = k as i64;
    let a = T::ratio(1, k + 1);
    let b = T::from_int(1) - T::ratio(1, 16 * k * k * k);
    let c = T::ratio(1, 4) - T::ratio(1, 16 * k * k);
    T::min_of(T::min_of(a, b), c)
}

/// Upper bound for `epsilon` given `eta`: `min{1/(16k^3), eta/2, eta/(32k^3 + 2)}`.
pub fn epsilon_bound<T: ExactField>(k: usize, eta: &T) -> T {
    let k = k as i64;
    let a = T::ratio(1, 16 * k * k * k);
    let b = eta.clone() / T::from_int(2);
    let c = eta.clone() / T::from_int(32 * k * k * k + 2);
    T::min_of(T::min_of(a, b), c)
}

/// Upper bound for `alpha` given `epsilon`: `epsilon^2 / (10k)`.
pub fn alpha_bound<T: ExactField>(k: usize, epsilon: &T) -> T {
    epsilon.clone() * epsilon.clone() / T::from_int(10 * k as i64)
}

/// `delta = epsilon (alpha / 20k)^2 / (k + 1)`.
pub fn delta_of<T: ExactField>(k: usize, epsilon: &T, alpha: &T) -> T {
    let scaled = alpha.clone() / T::from_int(20 * k as i64);
    epsilon.clone() * scaled.clone() * scaled / T::from_int(k as i64 + 1)
}

impl<T: ExactField> Constants<T> {
    /// Each constant at half of its upper bound, evaluated in order.
    pub fn choose(k: usize) -> Result<Self> {
        if k < 2 {
            return param(format!("constants require k >= 2, got k = {k}"));
        }
        let half = T::ratio(1, 2);
        let eta = eta_bound::<T>(k) * half.clone();
        let epsilon = epsilon_bound(k, &eta) * half.clone();
        let alpha = alpha_bound(k, &epsilon) * half;
        let delta = delta_of(k, &epsilon, &alpha);
        Ok(Constants {
            k,
            eta,
            epsilon,
            alpha,
            delta,
        })
    }

    /// Checks the three strict upper bounds and the definition of `delta`.
    pub fn validate(&self) -> Result<()> {
        let zero = T::from_int(0);
        if !(self.eta > zero && self.epsilon > zero && self.alpha > zero) {
            return param("constants must be positive");
        }
        if !(self.eta < eta_bound(self.k)) {
            return param("eta violates its upper bound");
        }
        if !(self.epsilon < epsilon_bound(self.k, &self.eta)) {
            return param("epsilon violates its upper bound");
        }
        if !(self.alpha < alpha_bound(self.k, &self.epsilon)) {
            return param("alpha violates its upper bound");
        }
        if self.delta != delta_of(self.k, &self.epsilon, &self.alpha) {
            return param("delta does not match epsilon (alpha/20k)^2/(k+1)");
        }
        Ok(())
    }

    pub fn to_f64(&self) -> Constants<f64> {
        let f = |v: &T| v.to_f64().unwrap_or(f64::NAN);
        Constants {
            k: self.k,
            eta: f(&self.eta),
            epsilon: f(&self.epsilon),
            alpha: f(&self.alpha),
            delta: f(&self.delta),
        }
    }
}

/// Free-function form of [`Constants::choose`].
pub fn choose_constants<T: ExactField>(k: usize) -> Result<Constants<T>> {
    Constants::choose(k)
}
