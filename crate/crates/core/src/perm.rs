//! Spacing and rank-permutation reduction of 1-D samples.
//!
//! For sorted points `u_(1) < … < u_(n)` the interior spacings are
//! `D_i = u_(i+1) − u_(i)`, `i = 1..n−1`. The nearest neighbor of `u_(i)` is
//! decided by comparing `D_{i−1}` with `D_i`, so the whole digraph is a
//! function of the rank permutation `σ` of the spacings:
//!
//! * `{u_(i), u_(i+1)}` is reflexive iff `σ(i)` is a local minimum of `σ`,
//!   where an end entry counts when it is below its single neighbor;
//! * `u_(i+1)` receives two arcs iff `σ(i) < σ(i−1)` and `σ(i+1) < σ(i+2)`,
//!   again with one-sided conditions at the ends.
//!
//! All positions in this module's public API are 1-based to match the usual
//! indexing of spacings.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::digraph::PointSample;
use crate::error::{out_of_range, Error, Result};

/// Interior spacings `D_1..D_{n−1}` of a 1-D sample, all strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingVector(Vec<f64>);

impl SpacingVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooFewPoints { min: 2, got: 1 });
        }
        if let Some(i) = values.iter().position(|&d| !(d > 0.0 && d.is_finite())) {
            return Err(Error::DuplicatePoints {
                first: i,
                second: i + 1,
            });
        }
        Ok(SpacingVector(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A permutation of `1..=m` stored as its sequence of values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankPermutation(Vec<usize>);

impl RankPermutation {
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        let m = sigma.len();
        let mut seen = alloc::vec![false; m + 1];
        for &v in &sigma {
            if v == 0 || v > m || seen[v] {
                return Err(Error::NotAPermutation { len: m });
            }
            seen[v] = true;
        }
        Ok(RankPermutation(sigma))
    }

    pub fn identity(m: usize) -> Self {
        RankPermutation((1..=m).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        RankPermutation(self.0.iter().rev().copied().collect())
    }

    /// Lexicographic successor, or `None` at the last permutation.
    pub fn next_lexicographic(&self) -> Option<Self> {
        let mut next = self.0.clone();
        next_permutation(&mut next).then_some(RankPermutation(next))
    }
}

/// Rearranges `values` into its lexicographic successor; returns false (and
/// leaves the slice sorted ascending) after the last permutation.
pub fn next_permutation<T: Ord>(values: &mut [T]) -> bool {
    let n = values.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        values.reverse();
        return false;
    }
    let mut j = n - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

/// Calls `f` once for every permutation of `1..=m`, in lexicographic order.
pub fn for_each_permutation<F: FnMut(&[usize])>(m: usize, mut f: F) {
    let mut sigma: Vec<usize> = (1..=m).collect();
    loop {
        f(&sigma);
        if !next_permutation(&mut sigma) {
            break;
        }
    }
}

/// Sorted-adjacent differences of a 1-D sample.
pub fn spacings(sample: &PointSample) -> Result<SpacingVector> {
    if sample.dim() != 1 {
        return Err(Error::Unsupported(alloc::format!(
            "spacings need 1-D data, sample has dimension {}",
            sample.dim()
        )));
    }
    let x = sample.coords();
    let order = sample.sorted_order_1d();
    SpacingVector::new(order.windows(2).map(|w| x[w[1]] - x[w[0]]).collect())
}

/// Ranks of the spacings, 1 for the smallest. Tied spacings are rejected.
pub fn rank_permutation(spacings: &SpacingVector) -> Result<RankPermutation> {
    let d = spacings.values();
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b)));

    let mut tied: Vec<usize> = Vec::new();
    for w in order.windows(2) {
        if d[w[0]] == d[w[1]] {
            tied.push(w[0] + 1);
            tied.push(w[1] + 1);
        }
    }
    if !tied.is_empty() {
        tied.sort_unstable();
        tied.dedup();
        return Err(Error::TiedSpacings { positions: tied });
    }

    let mut sigma = alloc::vec![0usize; d.len()];
    for (rank, &i) in order.iter().enumerate() {
        sigma[i] = rank + 1;
    }
    Ok(RankPermutation(sigma))
}

/// Local minima of a sequence where an end entry counts when it is smaller
/// than its single neighbor.
pub(crate) fn boundary_minima_slice<T: PartialOrd>(s: &[T]) -> usize {
    let m = s.len();
    let mut count = usize::from(s[0] < s[1]) + usize::from(s[m - 1] < s[m - 2]);
    for w in s.windows(3) {
        count += usize::from(w[1] < w[0] && w[1] < w[2]);
    }
    count
}

/// `Σ 1_{A_i}`: the number of boundary-rule local minima of `σ`, which equals
/// the number of reflexive pairs of any sample with this spacing order.
pub fn reflexive_indicator_count(sigma: &RankPermutation) -> Result<usize> {
    if sigma.len() < 2 {
        return Err(out_of_range("permutation length", sigma.len(), ">= 2"));
    }
    Ok(boundary_minima_slice(sigma.as_slice()))
}

pub(crate) fn shared_indicator_count_slice(s: &[usize]) -> usize {
    let m = s.len();
    // B_1 and B_{m-1} are one-sided: the end points always point inward.
    let mut count = usize::from(s[1] < s[2]) + usize::from(s[m - 2] < s[m - 3]);
    for w in s.windows(4) {
        count += usize::from(w[1] < w[0] && w[2] < w[3]);
    }
    count
}

/// `Σ 1_{B_i}`: the number of points that are the nearest neighbor of both
/// adjacent points, i.e. the number of shared-NN pairs.
pub fn shared_indicator_count(sigma: &RankPermutation) -> Result<usize> {
    if sigma.len() < 3 {
        return Err(out_of_range("permutation length", sigma.len(), ">= 3"));
    }
    Ok(shared_indicator_count_slice(sigma.as_slice()))
}

fn check_distinct<T: PartialOrd>(seq: &[T]) -> Result<()> {
    let mut idx: Vec<usize> = (0..seq.len()).collect();
    idx.sort_by(|&a, &b| seq[a].partial_cmp(&seq[b]).unwrap_or(Ordering::Equal));
    if idx
        .windows(2)
        .any(|w| seq[w[0]].partial_cmp(&seq[w[1]]) != Some(Ordering::Less))
    {
        return Err(Error::RepeatedValues);
    }
    Ok(())
}

/// Length of the longest subsequence `x_{i1} > x_{i2} < x_{i3} > …`.
///
/// Single pass: `odd` is the best length ending in an odd position (next step
/// must go down), `even` the best ending in an even position.
pub fn longest_alternating_subsequence<T: PartialOrd>(seq: &[T]) -> Result<usize> {
    if seq.is_empty() {
        return Err(Error::TooFewPoints { min: 1, got: 0 });
    }
    check_distinct(seq)?;
    let mut odd = 1usize;
    let mut even = 0usize;
    for w in seq.windows(2) {
        if w[1] < w[0] {
            even = even.max(odd + 1);
        } else if even > 0 {
            odd = odd.max(even + 1);
        }
    }
    Ok(odd.max(even))
}

/// Interior local minima and maxima (positions `2..=n−1` only).
pub fn local_extrema_counts<T: PartialOrd>(seq: &[T]) -> Result<(usize, usize)> {
    check_distinct(seq)?;
    let mut minima = 0;
    let mut maxima = 0;
    for w in seq.windows(3) {
        if w[1] < w[0] && w[1] < w[2] {
            minima += 1;
        } else if w[1] > w[0] && w[1] > w[2] {
            maxima += 1;
        }
    }
    Ok((minima, maxima))
}
