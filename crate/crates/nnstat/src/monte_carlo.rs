//! Seeded Monte Carlo harness for `R_n` and `Q_n`.
//!
//! Replication `i` draws its points from a ChaCha8 stream keyed by
//! `(seed, i)`, so any replication can be regenerated on its own and the
//! result never depends on how replications are spread over workers.
//! Per-replication counts are collected in replication order and reduced
//! sequentially, which makes the floating-point sums bit-identical for every
//! worker count.

use std::time::Instant;

use nnstat_core::digraph::{build_nn_digraph, build_sorted_1d, count_pairs, PointSample};
use nnstat_core::exact::{reflexive_constant, shared_constant};
use nnstat_core::special::{ks_pvalue, ks_statistic, lattice_ks_statistic, normal_cdf};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::format::sig12;

/// Environment variable that sets the worker count.
pub const THREADS_ENV: &str = "NNSTAT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distribution {
    UniformCube,
    StandardNormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Reflexive,
    Shared,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McConfig {
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub dim: usize,
    pub distribution: Distribution,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum McError {
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl McConfig {
    pub fn uniform(n: usize, reps: usize, seed: u64, dim: usize) -> Self {
        McConfig {
            n,
            reps,
            seed,
            dim,
            distribution: Distribution::UniformCube,
        }
    }

    pub fn validate(&self) -> Result<(), McError> {
        if self.n < 2 {
            return Err(McError::Config(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if self.reps < 1 {
            return Err(McError::Config("reps must be at least 1".into()));
        }
        if self.dim < 1 {
            return Err(McError::Config("dim must be at least 1".into()));
        }
        Ok(())
    }
}

/// Worker count from [`THREADS_ENV`], falling back to the machine's
/// available parallelism.
pub fn default_workers() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

fn run_on_workers<T, F>(workers: usize, job: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    match rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
    {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn draw_coords(rng: &mut ChaCha8Rng, len: usize, distribution: Distribution) -> Vec<f64> {
    match distribution {
        Distribution::UniformCube => (0..len).map(|_| rng.random::<f64>()).collect(),
        Distribution::StandardNormal => (0..len).map(|_| rng.sample(StandardNormal)).collect(),
    }
}

/// Reflexive and shared counts of one replication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RepCounts {
    pub reflexive: usize,
    pub shared: usize,
}

/// Draws the sample for replication `rep` and counts its pairs. A draw with
/// coinciding points (possible only through floating-point collisions) is
/// discarded and redrawn from the same stream.
pub fn replicate(config: &McConfig, rep: u64) -> RepCounts {
    let mut rng = stream_rng(config.seed, rep);
    loop {
        let coords = draw_coords(&mut rng, config.n * config.dim, config.distribution);
        let Ok(sample) = PointSample::from_flat(config.dim, coords) else {
            continue;
        };
        let counts = count_pairs(&build_nn_digraph(&sample));
        debug_assert!(counts.satisfies_invariants(config.n, config.dim));
        return RepCounts {
            reflexive: counts.reflexive,
            shared: counts.shared,
        };
    }
}

/// Per-replication counts, in replication order.
pub fn simulate_counts(config: &McConfig, workers: usize) -> Result<Vec<RepCounts>, McError> {
    config.validate()?;
    Ok(run_on_workers(workers, || {
        (0..config.reps as u64)
            .into_par_iter()
            .map(|rep| replicate(config, rep))
            .collect()
    }))
}

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    #[serde(serialize_with = "sig12")]
    pub value: f64,
    #[serde(serialize_with = "sig12")]
    pub std_error: f64,
}

impl Estimate {
    pub fn scaled(self, factor: f64) -> Estimate {
        Estimate {
            value: self.value * factor,
            std_error: self.std_error * factor,
        }
    }

    /// `|value − target|` in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.value - target).abs() / self.std_error
    }
}

/// Sample mean and sample variance of a sequence, each with a standard
/// error. The variance error uses the plug-in `sqrt((m4 − s⁴)/reps)`.
pub fn mean_and_variance(values: impl Iterator<Item = f64> + Clone) -> (Estimate, Estimate) {
    let (count, sum) = values
        .clone()
        .fold((0usize, 0.0), |(c, s), x| (c + 1, s + x));
    let reps = count as f64;
    let mean = sum / reps;
    let (m2, m4) = values.fold((0.0, 0.0), |(a, b), x| {
        let d = x - mean;
        (a + d * d, b + d * d * d * d)
    });
    let var = if count > 1 { m2 / (reps - 1.0) } else { 0.0 };
    let pop_var = m2 / reps;
    let fourth = m4 / reps;
    (
        Estimate {
            value: mean,
            std_error: (var / reps).sqrt(),
        },
        Estimate {
            value: var,
            std_error: ((fourth - pop_var * pop_var).max(0.0) / reps).sqrt(),
        },
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McSummary {
    #[serde(flatten)]
    pub config: McConfig,
    pub mean_r: Estimate,
    pub var_r: Estimate,
    pub mean_q: Estimate,
    pub var_q: Estimate,
    /// Wall-clock seconds; kept out of serialized output so that records are
    /// reproducible byte for byte.
    #[serde(skip)]
    pub elapsed: f64,
}

pub fn summarize(config: &McConfig, counts: &[RepCounts], elapsed: f64) -> McSummary {
    let r = counts.iter().map(|c| c.reflexive as f64);
    let q = counts.iter().map(|c| c.shared as f64);
    let (mean_r, var_r) = mean_and_variance(r);
    let (mean_q, var_q) = mean_and_variance(q);
    McSummary {
        config: config.clone(),
        mean_r,
        var_r,
        mean_q,
        var_q,
        elapsed,
    }
}

pub fn run_simulation(config: &McConfig, workers: usize) -> Result<McSummary, McError> {
    let start = Instant::now();
    let counts = simulate_counts(config, workers)?;
    Ok(summarize(config, &counts, start.elapsed().as_secs_f64()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CltReport {
    pub statistic: Statistic,
    #[serde(flatten)]
    pub config: McConfig,
    /// One standardized value per replication; written to CSV, not JSON.
    #[serde(skip)]
    pub standardized_values: Vec<f64>,
    #[serde(serialize_with = "sig12")]
    pub standardized_mean: f64,
    #[serde(serialize_with = "sig12")]
    pub standardized_sd: f64,
    /// Continuity-corrected distance over the integer lattice.
    #[serde(serialize_with = "sig12")]
    pub ks_statistic: f64,
    /// Plain distance to Φ; at least about half of one lattice step.
    #[serde(serialize_with = "sig12")]
    pub ks_statistic_uncorrected: f64,
    /// Asymptotic Kolmogorov p-value. `R_n` and `Q_n` live on a lattice of
    /// spacing `1/σ`, which alone inflates the statistic, so this is a
    /// diagnostic rather than a calibrated test.
    #[serde(serialize_with = "sig12")]
    pub ks_pvalue_bound: f64,
}

/// Exact null mean and variance used to standardize a statistic.
pub fn exact_moments(statistic: Statistic, n: usize) -> Result<(f64, f64), McError> {
    let n_f = n as f64;
    match statistic {
        Statistic::Reflexive if n >= 5 => Ok((n_f / 3.0, 2.0 * n_f / 45.0)),
        Statistic::Shared if n >= 7 => Ok((n_f / 4.0, 19.0 * n_f / 240.0)),
        Statistic::Reflexive => Err(McError::Config(format!(
            "the variance 2n/45 needs n >= 5, got {n}"
        ))),
        Statistic::Shared => Err(McError::Config(format!(
            "the variance 19n/240 needs n >= 7, got {n}"
        ))),
    }
}

pub fn clt_check(
    config: &McConfig,
    statistic: Statistic,
    workers: usize,
) -> Result<CltReport, McError> {
    let (mean, var) = exact_moments(statistic, config.n)?;
    let counts = simulate_counts(config, workers)?;
    Ok(clt_report(config, statistic, &counts, mean, var))
}

pub fn clt_report(
    config: &McConfig,
    statistic: Statistic,
    counts: &[RepCounts],
    mean: f64,
    var: f64,
) -> CltReport {
    let sd = var.sqrt();
    let raw: Vec<u64> = counts
        .iter()
        .map(|c| match statistic {
            Statistic::Reflexive => c.reflexive,
            Statistic::Shared => c.shared,
        } as u64)
        .collect();
    let standardized_values: Vec<f64> = raw.iter().map(|&x| (x as f64 - mean) / sd).collect();
    let (m, v) = mean_and_variance(standardized_values.iter().copied());
    let ks = lattice_ks_statistic(&raw, mean, sd);
    let ks_uncorrected = ks_statistic(&standardized_values, normal_cdf);
    CltReport {
        statistic,
        config: config.clone(),
        ks_pvalue_bound: ks_pvalue(ks, standardized_values.len()),
        standardized_values,
        standardized_mean: m.value,
        standardized_sd: v.value.sqrt(),
        ks_statistic: ks,
        ks_statistic_uncorrected: ks_uncorrected,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub n: usize,
    #[serde(serialize_with = "sig12")]
    pub r_ratio: f64,
    #[serde(serialize_with = "sig12")]
    pub q_ratio: f64,
}

/// Sample sizes `2, …, n_max`, roughly ten per decade.
pub fn log_checkpoints(n_max: usize) -> Vec<usize> {
    let mut points = vec![2usize];
    let mut k = 1u32;
    loop {
        let next = 10f64.powf(f64::from(k) / 10.0).round() as usize;
        k += 1;
        if next >= n_max {
            break;
        }
        if next > *points.last().unwrap() {
            points.push(next);
        }
    }
    if n_max > 2 {
        points.push(n_max);
    }
    points
}

/// One growing uniform sample path: points are appended one at a time and
/// `R_n/n`, `Q_n/n` are reported at logarithmically spaced sizes. New points
/// are sorted in batches and merged into the sorted prefix.
pub fn slln_trace(n_max: usize, seed: u64) -> Result<Vec<TracePoint>, McError> {
    if n_max < 10 {
        return Err(McError::Config(format!(
            "n_max must be at least 10, got {n_max}"
        )));
    }
    let mut rng = stream_rng(seed, 0);
    let mut sorted: Vec<f64> = Vec::with_capacity(n_max);
    let mut trace = Vec::new();
    for target in log_checkpoints(n_max) {
        while sorted.len() < target {
            let mut batch = draw_coords(&mut rng, target - sorted.len(), Distribution::UniformCube);
            batch.sort_by(f64::total_cmp);
            sorted = merge_sorted(&sorted, &batch);
            sorted.dedup();
        }
        let counts = count_pairs(&build_sorted_1d(&sorted).expect("strictly increasing"));
        trace.push(TracePoint {
            n: target,
            r_ratio: counts.reflexive as f64 / target as f64,
            q_ratio: counts.shared as f64 / target as f64,
        });
    }
    Ok(trace)
}

fn merge_sorted(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub dim: usize,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub r_hat: Estimate,
    pub q_hat: Estimate,
    #[serde(serialize_with = "sig12")]
    pub r_limit: f64,
    #[serde(serialize_with = "sig12")]
    pub q_reference: f64,
    pub q_reference_exact: bool,
    /// `Var(R_n)/n` and `Var(Q_n)/n`; reported only, no limit is known.
    #[serde(serialize_with = "sig12")]
    pub var_r_over_n: f64,
    #[serde(serialize_with = "sig12")]
    pub var_q_over_n: f64,
}

/// Monte Carlo estimates of `E(R_n)/n` and `E(Q_n)/n` for uniform points in
/// the unit `d`-cube, next to `r(d)` and the reference value of `q(d)`.
pub fn estimate_dimension_constants(
    dim: usize,
    n: usize,
    reps: usize,
    seed: u64,
    workers: usize,
) -> Result<DimensionEstimate, McError> {
    if !(1..=5).contains(&dim) {
        return Err(McError::Config(format!(
            "dimension must be in 1..=5, got {dim}"
        )));
    }
    if n < 1000 {
        return Err(McError::Config(format!("n must be at least 1000, got {n}")));
    }
    let summary = run_simulation(&McConfig::uniform(n, reps, seed, dim), workers)?;
    let scale = 1.0 / n as f64;
    let (q_reference, q_reference_exact) = shared_constant(dim).expect("dim in 1..=5");
    Ok(DimensionEstimate {
        dim,
        n,
        reps,
        seed,
        r_hat: summary.mean_r.scaled(scale),
        q_hat: summary.mean_q.scaled(scale),
        r_limit: reflexive_constant(dim).expect("dim >= 1"),
        q_reference,
        q_reference_exact,
        var_r_over_n: summary.var_r.value * scale,
        var_q_over_n: summary.var_q.value * scale,
    })
}
