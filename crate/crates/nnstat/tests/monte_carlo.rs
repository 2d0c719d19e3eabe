use nnstat::monte_carlo::{
    clt_check, estimate_dimension_constants, log_checkpoints, run_simulation, simulate_counts,
    slln_trace, Distribution, McConfig, Statistic,
};

#[test]
fn uniform_moments_match_exact_values() {
    let n = 1000;
    let config = McConfig::uniform(n, 20_000, 11, 1);
    let s = run_simulation(&config, 1).unwrap();
    let nf = n as f64;
    assert!(s.mean_r.z_score(nf / 3.0).abs() < 3.0, "{:?}", s.mean_r);
    assert!(
        s.var_r.z_score(2.0 * nf / 45.0).abs() < 4.0,
        "{:?}",
        s.var_r
    );
    assert!(s.mean_q.z_score(nf / 4.0).abs() < 3.0, "{:?}", s.mean_q);
    assert!(
        s.var_q.z_score(19.0 * nf / 240.0).abs() < 4.0,
        "{:?}",
        s.var_q
    );
}

#[test]
fn counts_do_not_depend_on_the_sampling_law() {
    let n = 2000;
    let config = McConfig {
        distribution: Distribution::StandardNormal,
        ..McConfig::uniform(n, 10_000, 5, 1)
    };
    let s = run_simulation(&config, 1).unwrap();
    let nf = n as f64;
    assert!(s.mean_r.z_score(nf / 3.0).abs() < 4.0, "{:?}", s.mean_r);
    assert!(s.mean_q.z_score(nf / 4.0).abs() < 4.0, "{:?}", s.mean_q);
    assert!(
        s.var_r.z_score(2.0 * nf / 45.0).abs() < 4.0,
        "{:?}",
        s.var_r
    );
}

#[test]
fn worker_count_does_not_change_results() {
    let config = McConfig::uniform(300, 500, 99, 2);
    let one = simulate_counts(&config, 1).unwrap();
    let four = simulate_counts(&config, 4).unwrap();
    assert_eq!(one, four);
}

#[test]
fn standardized_counts_are_close_to_normal() {
    let config = McConfig::uniform(1000, 4000, 21, 1);
    for stat in [Statistic::Reflexive, Statistic::Shared] {
        let report = clt_check(&config, stat, 1).unwrap();
        assert!(
            report.ks_statistic < 0.03,
            "{stat:?}: {}",
            report.ks_statistic
        );
        assert!(report.standardized_mean.abs() < 0.1);
        assert!((report.standardized_sd - 1.0).abs() < 0.1);
    }
}

#[test]
fn sample_path_ratios_settle() {
    let trace = slln_trace(200_000, 4).unwrap();
    let last = trace.last().unwrap();
    assert_eq!(last.n, 200_000);
    assert!((last.r_ratio - 1.0 / 3.0).abs() < 0.01);
    assert!((last.q_ratio - 0.25).abs() < 0.01);
    let ns: Vec<usize> = trace.iter().map(|t| t.n).collect();
    assert_eq!(ns, log_checkpoints(200_000));
}

#[test]
fn dimension_one_constants() {
    let est = estimate_dimension_constants(1, 2000, 200, 8, 1).unwrap();
    assert!((est.r_hat.value - 1.0 / 3.0).abs() < 4.0 * est.r_hat.std_error + 1e-3);
    assert!((est.q_hat.value - 0.25).abs() < 4.0 * est.q_hat.std_error + 1e-3);
    assert!(estimate_dimension_constants(6, 2000, 10, 8, 1).is_err());
}
