//! Normal distribution function and one-sample Kolmogorov-Smirnov tools.

use alloc::vec::Vec;

/// Standard normal distribution function `Φ(x)`, via the complementary error
/// function so both tails keep full relative precision.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}

/// Upper tail `1 − Φ(x)`.
pub fn normal_sf(x: f64) -> f64 {
    0.5 * libm::erfc(x / core::f64::consts::SQRT_2)
}

/// `sup_x |F_n(x) − F(x)|` of the sample against a continuous distribution
/// function. Repeated sample values are fine.
pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    if sample.is_empty() {
        return 0.0;
    }
    let mut xs: Vec<f64> = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter().enumerate().fold(0.0f64, |d, (i, &x)| {
        let f = cdf(x);
        d.max((i + 1) as f64 / n - f).max(f - i as f64 / n)
    })
}

/// Kolmogorov distance between the empirical law of integer counts and a
/// normal law with continuity correction: `sup_k |F_n(k) − Φ((k + ½ − μ)/σ)|`
/// over the observed values `k`. Between lattice points both sides are flat,
/// so this is the distance a lattice variable can actually approach zero in.
pub fn lattice_ks_statistic(counts: &[u64], mean: f64, sd: f64) -> f64 {
    if counts.is_empty() {
        return 0.0;
    }
    let mut xs = counts.to_vec();
    xs.sort_unstable();
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    let mut i = 0;
    while i < xs.len() {
        let start = i;
        let k = xs[i];
        while i < xs.len() && xs[i] == k {
            i += 1;
        }
        let below = normal_cdf((k as f64 - 0.5 - mean) / sd);
        let at = normal_cdf((k as f64 + 0.5 - mean) / sd);
        d = d
            .max((i as f64 / n - at).abs())
            .max((start as f64 / n - below).abs());
    }
    d
}

/// Survival function of the Kolmogorov distribution,
/// `P(K > λ) = 2 Σ_{k≥1} (−1)^{k−1} exp(−2k²λ²)`.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 0.2 {
        // the alternating series converges too slowly here and P(K > λ) > 1 − 1e-20
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let k = k as f64;
        let term = libm::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if term < 1e-18 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Asymptotic p-value for a KS statistic `d` from `n` observations, with
/// Stephens' small-sample correction of the scaling.
pub fn ks_pvalue(d: f64, n: usize) -> f64 {
    let root = libm::sqrt(n as f64);
    kolmogorov_sf((root + 0.12 + 0.11 / root) * d)
}
