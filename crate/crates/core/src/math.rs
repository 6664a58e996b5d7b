//! Float helpers that work without `std`.

pub(crate) use libm::{exp, expm1, log1p, sqrt};

pub(crate) fn powi(base: f64, exp: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Upper bound on `Σ_{k > m} μ^k / k!` for `μ ≥ 0`.
///
/// Uses the geometric majorant `μ^{m+1}/(m+1)! · 1/(1 − μ/(m+2))` when it
/// applies and falls back to `e^μ` otherwise.
pub(crate) fn exp_series_tail(mu: f64, m: u32) -> f64 {
    if mu <= 0.0 {
        return 0.0;
    }
    let next = (m + 2) as f64;
    if mu >= next {
        return exp(mu);
    }
    let mut term = 1.0;
    for k in 1..=(m + 1) {
        term *= mu / k as f64;
    }
    // Headroom for the rounding in the loop above.
    term / (1.0 - mu / next) * (1.0 + 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_majorizes_direct_sum() {
        for &mu in &[0.1, 0.5, 1.0, 3.0, 7.5] {
            for m in 0..30u32 {
                let mut direct = 0.0;
                let mut term = 1.0;
                for k in 1..=200u32 {
                    term *= mu / k as f64;
                    if k > m {
                        direct += term;
                    }
                }
                let bound = exp_series_tail(mu, m);
                assert!(bound >= direct * (1.0 - 1e-14), "mu={mu} m={m}");
            }
        }
    }

    #[test]
    fn tail_is_zero_without_intensity() {
        assert_eq!(exp_series_tail(0.0, 3), 0.0);
    }
}
