//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line;
//! the process exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use nnstat::monte_carlo::{
    clt_check, estimate_dimension_constants, slln_trace, McConfig, Statistic, THREADS_ENV,
};
use nnstat_core::digraph::{build_nn_digraph, count_pairs};
use nnstat_core::exact::{
    brute_force_moments_shared, brute_force_pmf_reflexive, covariance_reflexive_indicators,
    covariance_shared_indicators, enns_recurrence_pmf, pmf_reflexive, reflexive_constant,
    reflexive_constant_rational, shared_constant, shared_small_sample_moments, Rational,
    ReflexivePmfs,
};
use nnstat_core::inference::{exact_p_value, normal_approx_test_reflexive, Alternative};
use nnstat_core::perm::{
    for_each_permutation, rank_permutation, reflexive_indicator_count, shared_indicator_count,
    spacings,
};
use nnstat_core::PointSample;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn frac(num: usize, den: usize) -> Rational {
    format!("{num}/{den}").parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || {
        format!("took {:.2} s, limit {limit_s} s", elapsed.as_secs_f64())
    })
}

fn pmf_integrity() -> Outcome {
    let start = Instant::now();
    for pmf in ReflexivePmfs::new().take(300) {
        let n = pmf.n();
        ensure(pmf.total_mass().is_one(), || format!("n = {n}: mass != 1"))?;
        if n >= 2 {
            let support: Vec<usize> = pmf.support().collect();
            ensure(support == (1..=n / 2).collect::<Vec<_>>(), || {
                format!("n = {n}: support")
            })?;
        }
        if n >= 3 {
            ensure(pmf.mean() == frac(n, 3), || format!("n = {n}: mean"))?;
        }
        if n >= 5 {
            ensure(pmf.variance() == frac(2 * n, 45), || {
                format!("n = {n}: variance")
            })?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 5.0)?;
    Ok(format!("n = 1..300 exact, {:.2} s", elapsed.as_secs_f64()))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    for n in 2..=9 {
        let ok = pmf_reflexive(n).unwrap() == brute_force_pmf_reflexive(n).unwrap();
        ensure(ok, || format!("enumeration differs at n = {n}"))?;
    }
    for n in 4..=40 {
        let ok = pmf_reflexive(n).unwrap() == enns_recurrence_pmf(n).unwrap();
        ensure(ok, || format!("convolution recurrence differs at n = {n}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 60.0)?;
    Ok(format!(
        "enumeration 2..9, convolution 4..40, {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn shared_moments() -> Outcome {
    for n in 4..=10 {
        let (mean, var) = brute_force_moments_shared(n).unwrap();
        ensure(mean == frac(n, 4), || format!("mean at n = {n}"))?;
        if n >= 7 {
            ensure(var == frac(19 * n, 240), || format!("variance at n = {n}"))?;
        }
    }
    let report = shared_small_sample_moments();
    let deviating: Vec<String> = report
        .iter()
        .filter(|s| s.variance_deviates())
        .map(|s| format!("n={}: Var {} vs {}", s.n, s.variance, s.formula_variance))
        .collect();
    for n in [3, 5, 6] {
        ensure(
            report.iter().any(|s| s.n == n && s.variance_deviates()),
            || format!("n = {n} not reported as deviating"),
        )?;
    }
    Ok(format!(
        "exact for 4..10; deviations [{}]",
        deviating.join("; ")
    ))
}

fn enumerated_covariance(m: usize, events: fn(&[usize]) -> Vec<bool>) -> Vec<Vec<Rational>> {
    let mut singles: Vec<usize> = Vec::new();
    let mut pairs: Vec<Vec<usize>> = Vec::new();
    let mut total = 0;
    for_each_permutation(m, |s| {
        let e = events(s);
        if singles.is_empty() {
            singles = vec![0; e.len()];
            pairs = vec![vec![0; e.len()]; e.len()];
        }
        for i in 0..e.len() {
            singles[i] += usize::from(e[i]);
            for j in 0..e.len() {
                pairs[i][j] += usize::from(e[i] && e[j]);
            }
        }
        total += 1;
    });
    (0..singles.len())
        .map(|i| {
            (0..singles.len())
                .map(|j| {
                    frac(pairs[i][j], total) - frac(singles[i], total) * frac(singles[j], total)
                })
                .collect()
        })
        .collect()
}

fn a_events(s: &[usize]) -> Vec<bool> {
    let m = s.len();
    (0..m)
        .map(|i| (i == 0 || s[i] < s[i - 1]) && (i == m - 1 || s[i] < s[i + 1]))
        .collect()
}

fn b_events(s: &[usize]) -> Vec<bool> {
    let m = s.len();
    (0..m - 1)
        .map(|i| match i {
            0 => s[1] < s[2],
            _ if i == m - 2 => s[m - 2] < s[m - 3],
            _ => s[i] < s[i - 1] && s[i + 1] < s[i + 2],
        })
        .collect()
}

fn covariance_tables() -> Outcome {
    let m = 8;
    let a = enumerated_covariance(m, a_events);
    let mut zeros = 0;
    for i in 1..=m {
        for j in 1..=m {
            let table = covariance_reflexive_indicators(i, j, m).unwrap();
            ensure(table == a[i - 1][j - 1], || format!("A_{i}, A_{j}"))?;
            zeros += usize::from(i.abs_diff(j) > 2 && table.is_zero());
        }
    }
    let b = enumerated_covariance(m, b_events);
    for i in 1..m {
        for j in 1..m {
            let table = covariance_shared_indicators(i, j, m).unwrap();
            ensure(table == b[i - 1][j - 1], || format!("B_{i}, B_{j}"))?;
            zeros += usize::from(i.abs_diff(j) > 3 && table.is_zero());
        }
    }
    let mut up_down = 0;
    for_each_permutation(4, |s| {
        up_down += usize::from(s[0] < s[1] && s[1] > s[2] && s[2] < s[3])
    });
    let mut down_up = 0;
    for_each_permutation(5, |s| {
        down_up += usize::from(s[0] > s[1] && s[1] < s[2] && s[2] > s[3] && s[3] < s[4])
    });
    ensure(up_down == 5 && down_up == 16, || {
        format!("alternating counts {up_down}, {down_up}")
    })?;
    Ok(format!(
        "8x8 and 7x7 tables exact ({zeros} far-apart zeros), alternating counts 5 and 16"
    ))
}

fn pipeline_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut discrepancies = 0;
    for _ in 0..10_000 {
        let n = rng.random_range(3..=50);
        let xs: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let sample = PointSample::one_dim(&xs).map_err(|e| e.to_string())?;
        let counts = count_pairs(&build_nn_digraph(&sample));
        let sigma = rank_permutation(&spacings(&sample).unwrap()).map_err(|e| e.to_string())?;
        let r = reflexive_indicator_count(&sigma).unwrap();
        let q = if n == 3 {
            1
        } else {
            shared_indicator_count(&sigma).unwrap()
        };
        discrepancies += usize::from(r != counts.reflexive || q != counts.shared);
        let q1 = counts.class(1);
        ensure(2 * counts.shared + q1 == n, || {
            format!("Q != (n - Q1)/2 at n = {n}")
        })?;
    }
    ensure(discrepancies == 0, || {
        format!("{discrepancies} discrepancies")
    })?;
    Ok("10000 samples, 0 discrepancies".into())
}

fn slln() -> Outcome {
    let start = Instant::now();
    let trace = slln_trace(1_000_000, 17).map_err(|e| e.to_string())?;
    let last = trace.last().unwrap();
    let elapsed = start.elapsed();
    let (dr, dq) = (
        (last.r_ratio - 1.0 / 3.0).abs(),
        (last.q_ratio - 0.25).abs(),
    );
    ensure(last.n == 1_000_000 && dr < 0.005 && dq < 0.005, || {
        format!("R/n = {}, Q/n = {}", last.r_ratio, last.q_ratio)
    })?;
    within(elapsed, 30.0)?;
    Ok(format!(
        "R/n = {:.5}, Q/n = {:.5}, {:.2} s",
        last.r_ratio,
        last.q_ratio,
        elapsed.as_secs_f64()
    ))
}

fn clt() -> Outcome {
    let config = McConfig::uniform(2000, 10_000, 31, 1);
    let workers = nnstat::monte_carlo::default_workers();
    let mut parts = Vec::new();
    for stat in [Statistic::Reflexive, Statistic::Shared] {
        let report = clt_check(&config, stat, workers).map_err(|e| e.to_string())?;
        ensure(report.ks_statistic < 0.02, || {
            format!("{stat:?}: KS = {}", report.ks_statistic)
        })?;
        parts.push(format!(
            "{stat:?} KS = {:.4} (uncorrected {:.4})",
            report.ks_statistic, report.ks_statistic_uncorrected
        ));
    }
    Ok(parts.join(", "))
}

fn dimension_constants() -> Outcome {
    let start = Instant::now();
    let workers = nnstat::monte_carlo::default_workers();
    let d2 = estimate_dimension_constants(2, 5000, 200, 41, workers).map_err(|e| e.to_string())?;
    let d3 = estimate_dimension_constants(3, 5000, 200, 43, workers).map_err(|e| e.to_string())?;
    let r2 = reflexive_constant(2).unwrap();
    let r3 = reflexive_constant_rational(3)
        .unwrap()
        .unwrap()
        .to_f64()
        .unwrap();
    let (q2, _) = shared_constant(2).unwrap();
    let elapsed = start.elapsed();
    ensure((d2.r_hat.value - r2).abs() < 0.01, || {
        format!("d = 2: r_hat = {}", d2.r_hat.value)
    })?;
    ensure((d3.r_hat.value - r3).abs() < 0.01, || {
        format!("d = 3: r_hat = {}", d3.r_hat.value)
    })?;
    ensure((d2.q_hat.value - q2).abs() < 0.02, || {
        format!("d = 2: q_hat = {}", d2.q_hat.value)
    })?;
    within(elapsed, 300.0)?;
    Ok(format!(
        "r_hat(2) = {:.4} vs {r2:.4}, r_hat(3) = {:.4} vs {r3:.4}, q_hat(2) = {:.4} vs {q2}, {:.1} s",
        d2.r_hat.value,
        d3.r_hat.value,
        d2.q_hat.value,
        elapsed.as_secs_f64()
    ))
}

fn inference() -> Outcome {
    for pmf in ReflexivePmfs::new().take(50).skip(2) {
        for alt in [
            Alternative::Greater,
            Alternative::Less,
            Alternative::TwoSided,
        ] {
            let pvals: Vec<(Rational, Rational)> = pmf
                .support()
                .map(|k| (exact_p_value(&pmf, k, alt), pmf.prob(k)))
                .collect();
            for (alpha, _) in &pvals {
                let mass: Rational = pvals
                    .iter()
                    .filter(|(p, _)| p <= alpha)
                    .map(|(_, w)| w.clone())
                    .sum();
                ensure(mass <= *alpha, || {
                    format!("n = {}, {alt:?}: not super-uniform", pmf.n())
                })?;
            }
        }
    }
    let mut worst = 0.0f64;
    for n in [200usize, 300, 500, 1000] {
        let pmf = pmf_reflexive(n).unwrap();
        let sd = (2.0 * n as f64 / 45.0).sqrt();
        let lo = (n as f64 / 3.0 - 3.0 * sd).ceil() as usize;
        let hi = (n as f64 / 3.0 + 3.0 * sd).floor() as usize;
        for k in lo..=hi {
            for alt in [Alternative::Greater, Alternative::Less] {
                let exact = exact_p_value(&pmf, k, alt).to_f64().unwrap();
                let approx = normal_approx_test_reflexive(n, k, alt).unwrap().p_value;
                worst = worst.max((exact - approx).abs());
            }
        }
    }
    ensure(worst < 0.02, || {
        format!("normal vs exact differ by {worst}")
    })?;
    Ok(format!(
        "super-uniform for n <= 50; one-sided normal gap {worst:.4} for n >= 200"
    ))
}

fn determinism() -> Outcome {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_nnstat"))
            .args([
                "simulate", "--n", "1000", "--reps", "10000", "--seed", "7", "--format", "json",
            ])
            .env(THREADS_ENV, threads)
            .output()
            .map_err(|e| e.to_string())
    };
    let one = run("1")?;
    let eight = run("8")?;
    ensure(one.status.success() && eight.status.success(), || {
        "simulate failed".into()
    })?;
    ensure(one.stdout == eight.stdout, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", one.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exact pmf integrity", pmf_integrity),
        ("oracle equivalence", oracle_equivalence),
        ("Q_n moments", shared_moments),
        ("covariance tables", covariance_tables),
        ("pipeline identity", pipeline_identity),
        ("SLLN at n = 10^6", slln),
        ("CLT at n = 2000", clt),
        ("dimension constants", dimension_constants),
        ("inference sanity", inference),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
