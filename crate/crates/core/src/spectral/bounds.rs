use crate::error::{param, Result};
use crate::scalar::Scalar;

/// Spectral radius of `K_k ∨ K̄_{n-k}`:
/// `(k - 1 + sqrt((k - 1)^2 + 4k(n - k))) / 2`.
pub fn s_nk_lambda_closed_form<T: Scalar>(n: usize, k: usize) -> Result<T> {
    if k < 1 || n <= k {
        return param(format!("closed form requires n > k >= 1, got n = {n}, k = {k}"));
    }
    let km1 = T::of_usize(k - 1);
    let disc = km1 * km1 + T::of(4.0) * T::of_usize(k) * T::of_usize(n - k);
    Ok((km1 + disc.sqrt()) / T::of(2.0))
}

/// Window for the spectral radius of an extremal `C_{2k+2}`-free graph on
/// `n` vertices: the closed form of `S_{n,k}` below and `sqrt(2k(n-1))`
/// above.
pub fn lambda_bounds<T: Scalar>(n: usize, k: usize) -> Result<(T, T)> {
    if k < 2 || n <= k {
        return param(format!("lambda bounds require n > k >= 2, got n = {n}, k = {k}"));
    }
    let lower = s_nk_lambda_closed_form(n, k)?;
    let upper = (T::of(2.0) * T::of_usize(k) * T::of_usize(n - 1)).sqrt();
    Ok((lower, upper))
}

/// `sqrt(k n)`, the weaker lower estimate.
pub fn sqrt_kn<T: Scalar>(n: usize, k: usize) -> T {
    (T::of_usize(k) * T::of_usize(n)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(s_nk_lambda_closed_form::<f64>(5, 2).unwrap(), 3.0);
        for n in 2..50 {
            let v = s_nk_lambda_closed_form::<f64>(n, 1).unwrap();
            assert!((v - ((n - 1) as f64).sqrt()).abs() < 1e-12);
        }
        let v = s_nk_lambda_closed_form::<f64>(100, 2).unwrap();
        // (1 + sqrt(1 + 784)) / 2
        assert!((v - (1.0 + 785f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((v - 14.5089).abs() < 1e-4);
        assert!(sqrt_kn::<f64>(100, 2) <= v);
        assert!(s_nk_lambda_closed_form::<f64>(3, 3).is_err());
    }

    #[test]
    fn bounds_examples() {
        let (lo, hi) = lambda_bounds::<f64>(100, 2).unwrap();
        assert!((lo - 14.5089).abs() < 1e-4);
        assert!((hi - 396f64.sqrt()).abs() < 1e-12);
        assert!((hi - 19.8997).abs() < 1e-4);
        let (lo, _) = lambda_bounds::<f64>(10, 2).unwrap();
        assert!(lo >= 20f64.sqrt());
        for k in 2..10 {
            let (lo, _) = lambda_bounds::<f64>(k + 1, k).unwrap();
            assert!((lo - k as f64).abs() < 1e-12);
        }
        assert!(lambda_bounds::<f64>(10, 1).is_err());
    }

    proptest! {
        #[test]
        fn window_is_ordered(k in 2usize..12, extra in 1usize..5000) {
            let n = k + extra;
            let (lo, hi) = lambda_bounds::<f64>(n, k).unwrap();
            prop_assert!(sqrt_kn::<f64>(n, k) <= lo + 1e-9);
            prop_assert!(lo <= hi);
        }
    }
}
