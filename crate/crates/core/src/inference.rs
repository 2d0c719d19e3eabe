//! One-sample tests for 1-D point patterns based on the number of reflexive
//! pairs.
//!
//! The exact test reads its p-value off the exact pmf of `R_n` under
//! uniformity. Which tail indicates "clustering" depends on the kind of
//! clustering one has in mind, so the alternative is always supplied by the
//! caller.
//!
//! The two-sided p-value uses the minimum-likelihood convention: the total
//! probability of all outcomes no more likely than the observed one. Doubling
//! the smaller one-sided p-value is the common alternative and can differ
//! noticeably for lattice statistics like `R_n`.

use num_traits::ToPrimitive;

use crate::digraph::{build_nn_digraph, count_pairs, PairCounts, PointSample};
use crate::error::{out_of_range, Error, Result};
use crate::exact::{pmf_reflexive, rat, ExactPmf, Rational};
use crate::perm::{rank_permutation, spacings};
use crate::special::{normal_cdf, normal_sf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alternative {
    Greater,
    Less,
    TwoSided,
}

impl Alternative {
    pub fn label(self) -> &'static str {
        match self {
            Alternative::Greater => "greater",
            Alternative::Less => "less",
            Alternative::TwoSided => "two-sided",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestMethod {
    Exact,
    NormalApprox,
}

impl TestMethod {
    pub fn label(self) -> &'static str {
        match self {
            TestMethod::Exact => "exact",
            TestMethod::NormalApprox => "normal-approx",
        }
    }
}

/// Attached to every normal-approximation result.
pub const NORMAL_APPROX_WARNING: &str = "R_n has the same normal limit under every continuous \
     distribution, so for large n this approximation loses the ability to tell clustering or \
     regularity apart from uniformity; prefer the exact test";

#[derive(Debug, Clone, PartialEq)]
pub struct TestResult {
    pub n: usize,
    pub observed: usize,
    pub alternative: Alternative,
    pub method: TestMethod,
    pub p_value: f64,
    /// The exact p-value as a fraction, for the exact method.
    pub p_value_exact: Option<Rational>,
    /// `E(R_n) = n/3`.
    pub expected: Rational,
    pub warning: Option<&'static str>,
}

fn check_observed(n: usize, observed: usize) -> Result<()> {
    if observed < 1 || observed > n / 2 {
        return Err(Error::OutOfRange {
            what: "observed reflexive pairs",
            value: observed as i64,
            range: "1..=floor(n/2)",
        });
    }
    Ok(())
}

/// Exact p-value of `observed` under the pmf of `R_n`.
pub fn exact_p_value(pmf: &ExactPmf, observed: usize, alternative: Alternative) -> Rational {
    match alternative {
        Alternative::Greater => pmf.upper_tail(observed),
        Alternative::Less => pmf.lower_tail(observed),
        Alternative::TwoSided => pmf.mass_at_most_as_likely(observed),
    }
}

pub fn exact_test_reflexive(
    n: usize,
    observed: usize,
    alternative: Alternative,
) -> Result<TestResult> {
    if n < 3 {
        return Err(out_of_range("n", n, ">= 3"));
    }
    check_observed(n, observed)?;
    let pmf = pmf_reflexive(n)?;
    let p = exact_p_value(&pmf, observed, alternative);
    Ok(TestResult {
        n,
        observed,
        alternative,
        method: TestMethod::Exact,
        p_value: p.to_f64().unwrap_or(f64::NAN).clamp(0.0, 1.0),
        p_value_exact: Some(p),
        expected: rat(n as i64, 3),
        warning: None,
    })
}

/// Normal approximation with mean `n/3`, variance `2n/45` and a continuity
/// correction of one half.
pub fn normal_approx_test_reflexive(
    n: usize,
    observed: usize,
    alternative: Alternative,
) -> Result<TestResult> {
    if n < 30 {
        return Err(Error::Unsupported(alloc::format!(
            "normal approximation needs n >= 30 (got {n}); use the exact method"
        )));
    }
    check_observed(n, observed)?;
    let mean = n as f64 / 3.0;
    let sd = libm::sqrt(2.0 * n as f64 / 45.0);
    let k = observed as f64;
    let p = match alternative {
        Alternative::Greater => normal_sf((k - 0.5 - mean) / sd),
        Alternative::Less => normal_cdf((k + 0.5 - mean) / sd),
        Alternative::TwoSided => {
            let z = ((k - mean).abs() - 0.5).max(0.0) / sd;
            2.0 * normal_sf(z)
        }
    };
    Ok(TestResult {
        n,
        observed,
        alternative,
        method: TestMethod::NormalApprox,
        p_value: p.clamp(0.0, 1.0),
        p_value_exact: None,
        expected: rat(n as i64, 3),
        warning: Some(NORMAL_APPROX_WARNING),
    })
}

/// Counts and exact test for one observed 1-D pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleAnalysis {
    pub counts: PairCounts,
    pub test: TestResult,
}

/// Builds the digraph of a 1-D sample and runs the exact test on its number
/// of reflexive pairs. Samples with tied spacings are rejected because the
/// exact null distribution assumes every spacing order is strict.
pub fn analyze_sample(sample: &PointSample, alternative: Alternative) -> Result<SampleAnalysis> {
    if sample.dim() != 1 {
        return Err(Error::Unsupported(alloc::format!(
            "the exact test needs 1-D data, sample has dimension {}",
            sample.dim()
        )));
    }
    if sample.len() < 3 {
        return Err(out_of_range("n", sample.len(), ">= 3"));
    }
    rank_permutation(&spacings(sample)?)?;
    let counts = count_pairs(&build_nn_digraph(sample));
    let test = exact_test_reflexive(sample.len(), counts.reflexive, alternative)?;
    Ok(SampleAnalysis { counts, test })
}
