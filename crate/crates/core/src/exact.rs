//! Exact finite-sample distribution theory for 1-D uniform samples.
//!
//! Everything except the dimension constants is carried in exact rational
//! arithmetic. The pmf of `R_n` comes from the insertion recurrence
//!
//! ```text
//! p(n+1, k) = (2k/n) p(n, k) + ((n − 2k + 2)/n) p(n, k − 1),   n ≥ 2,
//! ```
//!
//! seeded with `p(1,0) = p(2,1) = 1`. Internally the table is held as integer
//! counts over the common denominator `(n−1)!`, which is the same recurrence
//! scaled by `n!` and keeps every step free of gcd reductions.
//!
//! Two independent oracles check it: exhaustive enumeration of rank
//! permutations, and the convolution recurrence obtained by splitting at the
//! largest spacing.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{out_of_range, Error, Result};
use crate::perm::{boundary_minima_slice, for_each_permutation, shared_indicator_count_slice};

pub type Rational = num_rational::BigRational;

pub(crate) fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact pmf `k ↦ P(R_n = k)`.
///
/// Stored as positive integer weights over a common denominator; only the
/// support is kept.
#[derive(Debug, Clone)]
pub struct ExactPmf {
    n: usize,
    weights: BTreeMap<usize, BigInt>,
    total: BigInt,
}

impl PartialEq for ExactPmf {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.weights.len() == other.weights.len()
            && self.weights.iter().all(|(k, w)| {
                other
                    .weights
                    .get(k)
                    .is_some_and(|v| w * &other.total == v * &self.total)
            })
    }
}

impl ExactPmf {
    /// Builds a pmf from explicit probabilities, checking that they are
    /// positive and sum to exactly one. Zero entries are dropped.
    pub fn from_probs(n: usize, probs: &BTreeMap<usize, Rational>) -> Result<Self> {
        let mut total = BigInt::one();
        for p in probs.values() {
            if p.is_negative() {
                return Err(Error::Unsupported("negative probability".into()));
            }
            total = total.lcm(p.denom());
        }
        let weights: BTreeMap<usize, BigInt> = probs
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(&k, p)| (k, p.numer() * (&total / p.denom())))
            .collect();
        let pmf = ExactPmf { n, weights, total };
        if !pmf.total_mass().is_one() {
            return Err(Error::Unsupported("probabilities do not sum to 1".into()));
        }
        Ok(pmf)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `P(R_n = k)` in lowest terms.
    pub fn prob(&self, k: usize) -> Rational {
        self.weights.get(&k).map_or_else(Rational::zero, |w| {
            Rational::new(w.clone(), self.total.clone())
        })
    }

    pub fn probs(&self) -> BTreeMap<usize, Rational> {
        self.weights.keys().map(|&k| (k, self.prob(k))).collect()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights.keys().copied()
    }

    pub fn total_mass(&self) -> Rational {
        let s: BigInt = self.weights.values().sum();
        Rational::new(s, self.total.clone())
    }

    /// `E[R_n^r]`.
    pub fn raw_moment(&self, r: u32) -> Rational {
        let s: BigInt = self
            .weights
            .iter()
            .map(|(&k, w)| BigInt::from(k).pow(r) * w)
            .sum();
        Rational::new(s, self.total.clone())
    }

    pub fn mean(&self) -> Rational {
        self.raw_moment(1)
    }

    pub fn variance(&self) -> Rational {
        let m = self.mean();
        self.raw_moment(2) - &m * &m
    }

    /// `P(R_n ≥ k)`.
    pub fn upper_tail(&self, k: usize) -> Rational {
        let s: BigInt = self.weights.range(k..).map(|(_, w)| w).sum();
        Rational::new(s, self.total.clone())
    }

    /// `P(R_n ≤ k)`.
    pub fn lower_tail(&self, k: usize) -> Rational {
        let s: BigInt = self.weights.range(..=k).map(|(_, w)| w).sum();
        Rational::new(s, self.total.clone())
    }

    /// `Σ_{k : p(n,k) ≤ p(n,k0)} p(n,k)`.
    pub fn mass_at_most_as_likely(&self, k0: usize) -> Rational {
        let w0 = self.weights.get(&k0).cloned().unwrap_or_default();
        let s: BigInt = self.weights.values().filter(|w| **w <= w0).sum();
        Rational::new(s, self.total.clone())
    }

    pub fn prob_f64(&self, k: usize) -> f64 {
        self.prob(k).to_f64().unwrap_or(f64::NAN)
    }
}

/// Successive pmfs of `R_1, R_2, …` from the insertion recurrence.
#[derive(Debug, Clone)]
pub struct ReflexivePmfs {
    next: ExactPmf,
}

impl Default for ReflexivePmfs {
    fn default() -> Self {
        ReflexivePmfs {
            next: ExactPmf {
                n: 1,
                weights: BTreeMap::from([(0, BigInt::one())]),
                total: BigInt::one(),
            },
        }
    }
}

impl ReflexivePmfs {
    pub fn new() -> Self {
        Self::default()
    }

    fn advance(current: &ExactPmf) -> ExactPmf {
        let n = current.n;
        if n == 1 {
            return ExactPmf {
                n: 2,
                weights: BTreeMap::from([(1, BigInt::one())]),
                total: BigInt::one(),
            };
        }
        // weights are p(n,k)·(n−1)!; multiplying the recurrence by n! gives
        // w'(k) = 2k·w(k) + (n − 2k + 2)·w(k−1) over the denominator n!.
        let mut weights = BTreeMap::new();
        for k in 1..=n.div_ceil(2) {
            let mut w = BigInt::zero();
            if let Some(same) = current.weights.get(&k) {
                w += same * (2 * k);
            }
            if let Some(prev) = current.weights.get(&(k - 1)) {
                w += prev * (n + 2 - 2 * k);
            }
            if !w.is_zero() {
                weights.insert(k, w);
            }
        }
        ExactPmf {
            n: n + 1,
            weights,
            total: &current.total * n,
        }
    }
}

impl Iterator for ReflexivePmfs {
    type Item = ExactPmf;

    fn next(&mut self) -> Option<ExactPmf> {
        let following = Self::advance(&self.next);
        Some(core::mem::replace(&mut self.next, following))
    }
}

/// Exact pmf of `R_n` for `n ≥ 1`.
pub fn pmf_reflexive(n: usize) -> Result<ExactPmf> {
    if n < 1 {
        return Err(out_of_range("n", n, ">= 1"));
    }
    Ok(ReflexivePmfs::new()
        .nth(n - 1)
        .expect("iterator is infinite"))
}

/// Pmf of `R_n` by evaluating the boundary-rule local-minimum count over all
/// `(n−1)!` rank permutations.
pub fn brute_force_pmf_reflexive(n: usize) -> Result<ExactPmf> {
    if !(2..=10).contains(&n) {
        return Err(out_of_range("n", n, "2..=10"));
    }
    let m = n - 1;
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut total = 0u64;
    for_each_permutation(m, |sigma| {
        let k = if m == 1 {
            1
        } else {
            boundary_minima_slice(sigma)
        };
        *counts.entry(k).or_insert(0) += 1;
        total += 1;
    });
    Ok(ExactPmf {
        n,
        weights: counts
            .into_iter()
            .map(|(k, c)| (k, BigInt::from(c)))
            .collect(),
        total: BigInt::from(total),
    })
}

/// Exact mean and variance of `Q_n` by enumerating the shared-NN indicator
/// sum over all `(n−1)!` rank permutations.
pub fn brute_force_moments_shared(n: usize) -> Result<(Rational, Rational)> {
    if !(3..=10).contains(&n) {
        return Err(out_of_range("n", n, "3..=10"));
    }
    let m = n - 1;
    let (mut s1, mut s2, mut total) = (0u64, 0u64, 0u64);
    for_each_permutation(m, |sigma| {
        // three points: both ends always point at the middle one
        let q = if m == 2 {
            1
        } else {
            shared_indicator_count_slice(sigma)
        } as u64;
        s1 += q;
        s2 += q * q;
        total += 1;
    });
    let mean = Rational::new(BigInt::from(s1), BigInt::from(total));
    let var = Rational::new(BigInt::from(s2), BigInt::from(total)) - &mean * &mean;
    Ok((mean, var))
}

/// How a moment was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentSource {
    ClosedForm,
    Enumeration,
}

impl MomentSource {
    pub fn label(self) -> &'static str {
        match self {
            MomentSource::ClosedForm => "closed-form",
            MomentSource::Enumeration => "enumeration",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SourcedMoment {
    pub value: Rational,
    pub source: MomentSource,
}

impl SourcedMoment {
    fn closed(value: Rational) -> Self {
        SourcedMoment {
            value,
            source: MomentSource::ClosedForm,
        }
    }

    fn enumerated(value: Rational) -> Self {
        SourcedMoment {
            value,
            source: MomentSource::Enumeration,
        }
    }
}

/// `E(R_n)`: `n/3` for `n ≥ 3`, from the exact pmf below that.
pub fn mean_reflexive(n: usize) -> Result<SourcedMoment> {
    match n {
        0 | 1 => Err(out_of_range("n", n, ">= 2")),
        2 => Ok(SourcedMoment::enumerated(pmf_reflexive(n)?.mean())),
        _ => Ok(SourcedMoment::closed(rat(n as i64, 3))),
    }
}

/// `Var(R_n)`: `2n/45` for `n ≥ 5`, from the exact pmf below that.
pub fn var_reflexive(n: usize) -> Result<SourcedMoment> {
    match n {
        0 | 1 => Err(out_of_range("n", n, ">= 2")),
        2..=4 => Ok(SourcedMoment::enumerated(pmf_reflexive(n)?.variance())),
        _ => Ok(SourcedMoment::closed(rat(2 * n as i64, 45))),
    }
}

/// `E(Q_n)`: `n/4` for `n ≥ 4`, by enumeration for `n = 3`.
pub fn mean_shared(n: usize) -> Result<SourcedMoment> {
    match n {
        0..=2 => Err(out_of_range("n", n, ">= 3")),
        3 => Ok(SourcedMoment::enumerated(brute_force_moments_shared(n)?.0)),
        _ => Ok(SourcedMoment::closed(rat(n as i64, 4))),
    }
}

/// `Var(Q_n)`: `19n/240` for `n ≥ 7`, by enumeration for `3 ≤ n ≤ 6`.
pub fn var_shared(n: usize) -> Result<SourcedMoment> {
    match n {
        0..=2 => Err(out_of_range("n", n, ">= 3")),
        3..=6 => Ok(SourcedMoment::enumerated(brute_force_moments_shared(n)?.1)),
        _ => Ok(SourcedMoment::closed(rat(19 * n as i64, 240))),
    }
}

/// Enumerated moments of `Q_n` next to the large-`n` formulas, for a sample
/// size below the range where the formulas hold.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallSampleShared {
    pub n: usize,
    pub mean: Rational,
    pub variance: Rational,
    pub formula_mean: Rational,
    pub formula_variance: Rational,
}

impl SmallSampleShared {
    pub fn mean_deviates(&self) -> bool {
        self.mean != self.formula_mean
    }

    pub fn variance_deviates(&self) -> bool {
        self.variance != self.formula_variance
    }
}

/// Enumerated moments of `Q_n` for `n = 3..=6` compared with `n/4` and
/// `19n/240`.
pub fn shared_small_sample_moments() -> Vec<SmallSampleShared> {
    (3..=6)
        .map(|n| {
            let (mean, variance) = brute_force_moments_shared(n).expect("n in range");
            SmallSampleShared {
                n,
                mean,
                variance,
                formula_mean: rat(n as i64, 4),
                formula_variance: rat(19 * n as i64, 240),
            }
        })
        .collect()
}

/// `Cov(1_{A_i}, 1_{A_j})` for the reflexive-pair indicators of a uniform
/// permutation of length `m ≥ 4`; `1 ≤ i, j ≤ m`.
pub fn covariance_reflexive_indicators(i: usize, j: usize, m: usize) -> Result<Rational> {
    if m < 4 {
        return Err(out_of_range("m", m, ">= 4"));
    }
    for idx in [i, j] {
        if !(1..=m).contains(&idx) {
            return Err(out_of_range("indicator index", idx, "1..=m"));
        }
    }
    let (a, b) = (i.min(j), i.max(j));
    let at_end = a == 1 || b == m;
    Ok(match (b - a, at_end) {
        (0, true) => rat(1, 4),
        (0, false) => rat(2, 9),
        (1, true) => rat(-1, 6),
        (1, false) => rat(-1, 9),
        (2, true) => rat(1, 24),
        (2, false) => rat(1, 45),
        _ => Rational::zero(),
    })
}

/// `Cov(1_{B_i}, 1_{B_j})` for the shared-NN indicators of a uniform
/// permutation of length `m ≥ 6`; `1 ≤ i, j ≤ m − 1`.
pub fn covariance_shared_indicators(i: usize, j: usize, m: usize) -> Result<Rational> {
    if m < 6 {
        return Err(out_of_range("m", m, ">= 6"));
    }
    let last = m - 1;
    for idx in [i, j] {
        if !(1..=last).contains(&idx) {
            return Err(out_of_range("indicator index", idx, "1..=m-1"));
        }
    }
    let (a, b) = (i.min(j), i.max(j));
    let at_end = a == 1 || b == last;
    Ok(match (b - a, at_end) {
        (0, true) => rat(1, 4),
        (0, false) => rat(3, 16),
        (1, true) => Rational::zero(),
        (1, false) => rat(-1, 80),
        (2, true) => rat(-1, 8),
        (2, false) => rat(-1, 16),
        (3, true) => rat(1, 24),
        (3, false) => rat(1, 48),
        _ => Rational::zero(),
    })
}

/// `r(d) = lim E(R_n)/n` for a sample with a continuous density in `d`
/// dimensions.
pub fn reflexive_constant(d: usize) -> Result<f64> {
    if d < 1 {
        return Err(out_of_range("d", d, ">= 1"));
    }
    let half = d / 2;
    let mut sum = 0.0;
    let mut coef = 1.0;
    let mut power = 1.0;
    if d % 2 == 1 {
        // d = 2m+1: 1·3⋯(2k−1) / 2·4⋯(2k)
        for k in 1..=half {
            coef *= (2 * k - 1) as f64 / (2 * k) as f64;
            power *= 0.75;
            sum += coef * power;
        }
        Ok(1.0 / (3.0 + sum))
    } else {
        // d = 2m: 2·4⋯(2k) / 3·5⋯(2k+1)
        for k in 1..half {
            coef *= (2 * k) as f64 / (2 * k + 1) as f64;
            power *= 0.75;
            sum += coef * power;
        }
        let root3_over_pi = libm::sqrt(3.0) / core::f64::consts::PI;
        Ok(1.0 / (8.0 / 3.0 + root3_over_pi * (1.0 + sum)))
    }
}

/// `r(d)` as an exact fraction for odd `d`; `None` for even `d`, where the
/// value involves `√3/π`.
pub fn reflexive_constant_rational(d: usize) -> Result<Option<Rational>> {
    if d < 1 {
        return Err(out_of_range("d", d, ">= 1"));
    }
    if d.is_multiple_of(2) {
        return Ok(None);
    }
    let mut sum = rat(3, 1);
    let mut term = Rational::one();
    for k in 1..=d / 2 {
        term = term * rat(2 * k as i64 - 1, 2 * k as i64) * rat(3, 4);
        sum += &term;
    }
    Ok(Some(sum.recip()))
}

/// `q(d) = lim E(Q_n)/n` together with whether the value is exact. Only
/// `q(1)` is known exactly; `d = 2..=5` are published empirical values.
pub fn shared_constant(d: usize) -> Result<(f64, bool)> {
    match d {
        1 => Ok((0.25, true)),
        2 => Ok((0.315, false)),
        3 => Ok((0.355, false)),
        4 => Ok((0.38, false)),
        5 => Ok((0.4, false)),
        _ => Err(Error::Unsupported(alloc::format!(
            "q({d}): no published value"
        ))),
    }
}

/// Largest `n` accepted by [`enns_recurrence_pmf`].
pub const ENNS_MAX_N: usize = 60;

/// Pmf of `R_n` from the largest-spacing convolution recurrence
///
/// ```text
/// p(n,k) = 2/(n−1) p(n−1,k) + Σ_{i=2}^{n−2} Σ_{j=1}^{k−1} p(i,j) p(n−i,k−j) / (n−1).
/// ```
///
/// Quartic in `n`; meant as a cross-check for [`pmf_reflexive`].
pub fn enns_recurrence_pmf(n: usize) -> Result<ExactPmf> {
    if !(4..=ENNS_MAX_N).contains(&n) {
        return Err(out_of_range("n", n, "4..=60"));
    }
    // table[size][k]; sizes 1..=3 are the fixed small cases.
    let mut table: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
    table.push(Vec::new());
    table.push(alloc::vec![Rational::one()]);
    table.push(alloc::vec![Rational::zero(), Rational::one()]);
    table.push(alloc::vec![Rational::zero(), Rational::one()]);
    let get = |t: &Vec<Vec<Rational>>, size: usize, k: usize| t[size].get(k).cloned();
    for size in 4..=n {
        let kmax = size / 2;
        let inv = rat(1, size as i64 - 1);
        let mut row = alloc::vec![Rational::zero(); kmax + 1];
        for (k, slot) in row.iter_mut().enumerate().skip(1) {
            let mut acc = get(&table, size - 1, k).unwrap_or_else(Rational::zero) * rat(2, 1);
            for i in 2..=size - 2 {
                for j in 1..k {
                    if let (Some(a), Some(b)) = (get(&table, i, j), get(&table, size - i, k - j)) {
                        if !a.is_zero() && !b.is_zero() {
                            acc += a * b;
                        }
                    }
                }
            }
            *slot = acc * &inv;
        }
        table.push(row);
    }
    let probs: BTreeMap<usize, Rational> = table[n]
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| (k, p.clone()))
        .collect();
    ExactPmf::from_probs(n, &probs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pmf_of(n: usize, entries: &[(usize, i64, i64)]) -> ExactPmf {
        let probs = entries.iter().map(|&(k, a, b)| (k, rat(a, b))).collect();
        ExactPmf::from_probs(n, &probs).unwrap()
    }

    #[test]
    fn small_pmfs() {
        assert_eq!(pmf_reflexive(1).unwrap(), pmf_of(1, &[(0, 1, 1)]));
        assert_eq!(pmf_reflexive(2).unwrap(), pmf_of(2, &[(1, 1, 1)]));
        assert_eq!(pmf_reflexive(3).unwrap(), pmf_of(3, &[(1, 1, 1)]));
        assert_eq!(
            pmf_reflexive(4).unwrap(),
            pmf_of(4, &[(1, 2, 3), (2, 1, 3)])
        );
        assert_eq!(
            pmf_reflexive(5).unwrap(),
            pmf_of(5, &[(1, 1, 3), (2, 2, 3)])
        );
        assert_eq!(pmf_reflexive(4).unwrap().prob(2), rat(1, 3));
        assert!(pmf_reflexive(0).is_err());
    }

    #[test]
    fn brute_force_small_cases() {
        assert_eq!(
            brute_force_pmf_reflexive(2).unwrap(),
            pmf_of(2, &[(1, 1, 1)])
        );
        assert_eq!(
            brute_force_pmf_reflexive(4).unwrap(),
            pmf_of(4, &[(1, 2, 3), (2, 1, 3)])
        );
        assert!(brute_force_pmf_reflexive(1).is_err());
        assert!(brute_force_pmf_reflexive(11).is_err());
    }

    #[test]
    fn from_probs_rejects_bad_mass() {
        let probs = BTreeMap::from([(1, rat(1, 2))]);
        assert!(ExactPmf::from_probs(3, &probs).is_err());
    }

    #[test]
    fn moment_routing() {
        assert_eq!(mean_reflexive(300).unwrap().value, rat(100, 1));
        let v5 = var_reflexive(5).unwrap();
        assert_eq!((v5.value, v5.source), (rat(2, 9), MomentSource::ClosedForm));
        let v4 = var_reflexive(4).unwrap();
        assert_eq!(
            (v4.value, v4.source),
            (rat(2, 9), MomentSource::Enumeration)
        );
        assert_eq!(mean_reflexive(2).unwrap().value, rat(1, 1));
        assert!(mean_reflexive(1).is_err());

        assert_eq!(mean_shared(4).unwrap().value, rat(1, 1));
        assert_eq!(var_shared(240).unwrap().value, rat(19, 1));
        assert_eq!(mean_shared(1000).unwrap().value, rat(250, 1));
        assert_eq!(mean_shared(3).unwrap().value, rat(1, 1));
        assert_eq!(var_shared(6).unwrap().source, MomentSource::Enumeration);
        assert!(var_shared(2).is_err());
    }

    #[test]
    fn brute_force_shared_matches_closed_form_range() {
        assert_eq!(brute_force_moments_shared(4).unwrap().0, rat(1, 1));
        assert_eq!(brute_force_moments_shared(8).unwrap().1, rat(19, 30));
        // three points: Q_3 is always 1
        assert_eq!(
            brute_force_moments_shared(3).unwrap(),
            (rat(1, 1), Rational::zero())
        );
    }

    #[test]
    fn covariance_examples() {
        assert_eq!(
            covariance_reflexive_indicators(1, 2, 7).unwrap(),
            rat(-1, 6)
        );
        assert_eq!(
            covariance_reflexive_indicators(2, 4, 7).unwrap(),
            rat(1, 45)
        );
        assert_eq!(
            covariance_reflexive_indicators(1, 5, 7).unwrap(),
            Rational::zero()
        );
        assert!(covariance_reflexive_indicators(0, 1, 7).is_err());
        assert!(covariance_reflexive_indicators(1, 1, 3).is_err());

        assert_eq!(
            covariance_shared_indicators(1, 2, 8).unwrap(),
            Rational::zero()
        );
        assert_eq!(covariance_shared_indicators(2, 4, 8).unwrap(), rat(-1, 16));
        assert_eq!(covariance_shared_indicators(2, 5, 8).unwrap(), rat(1, 48));
        assert!(covariance_shared_indicators(1, 8, 8).is_err());
    }

    #[test]
    fn dimension_constants() {
        assert!((reflexive_constant(1).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((reflexive_constant(3).unwrap() - 8.0 / 27.0).abs() < 1e-15);
        let r2 = reflexive_constant(2).unwrap();
        let pi = core::f64::consts::PI;
        assert!((r2 - 3.0 * pi / (8.0 * pi + 3.0 * libm::sqrt(3.0))).abs() < 1e-15);
        assert!((r2 - 0.3108).abs() < 1e-4);
        assert!(reflexive_constant(0).is_err());
        assert_eq!(reflexive_constant_rational(1).unwrap(), Some(rat(1, 3)));
        assert_eq!(reflexive_constant_rational(3).unwrap(), Some(rat(8, 27)));
        assert_eq!(reflexive_constant_rational(2).unwrap(), None);
        for d in [5usize, 7, 9] {
            let exact = reflexive_constant_rational(d)
                .unwrap()
                .unwrap()
                .to_f64()
                .unwrap();
            assert!((exact - reflexive_constant(d).unwrap()).abs() < 1e-14);
        }

        assert_eq!(shared_constant(1).unwrap(), (0.25, true));
        assert_eq!(shared_constant(2).unwrap(), (0.315, false));
        assert_eq!(shared_constant(5).unwrap(), (0.4, false));
        let err = shared_constant(6).unwrap_err();
        assert!(alloc::format!("{err}").contains("no published value"));
    }

    #[test]
    fn enns_small_cases() {
        assert_eq!(enns_recurrence_pmf(4).unwrap(), pmf_reflexive(4).unwrap());
        assert_eq!(enns_recurrence_pmf(5).unwrap(), pmf_reflexive(5).unwrap());
        assert_eq!(enns_recurrence_pmf(20).unwrap(), pmf_reflexive(20).unwrap());
        assert!(enns_recurrence_pmf(3).is_err());
    }

    #[test]
    fn tails_are_complementary() {
        let pmf = pmf_reflexive(12).unwrap();
        for k in pmf.support().collect::<Vec<_>>() {
            assert_eq!(
                pmf.upper_tail(k) + pmf.lower_tail(k),
                Rational::one() + pmf.prob(k)
            );
        }
    }
}
