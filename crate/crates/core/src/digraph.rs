//! Nearest-neighbor digraphs of point samples.
//!
//! Every point has an arc to its nearest neighbor under Euclidean distance.
//! From the digraph we read off the number of reflexive (mutual) pairs
//! `R_n`, the number of shared-NN pairs `Q_n = Σ_w C(indeg(w), 2)`, and the
//! in-degree classes `Q_{j,n}`.
//!
//! One-dimensional samples are handled by sorting: the nearest neighbor of an
//! order statistic is always one of its two adjacent order statistics, so the
//! whole digraph costs `O(n log n)`. Higher dimensions use a direct `O(n²)`
//! search.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

/// Point coordinates in `dim` dimensions, stored row-major.
///
/// Construction validates that there are at least two points, that every
/// coordinate is finite, and that no two points coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSample {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSample {
    /// Builds a sample from one coordinate vector per point.
    pub fn new(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    index,
                    expected: dim,
                    got: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords)
    }

    /// Builds a sample from row-major coordinates; `coords.len()` must be a
    /// multiple of `dim`.
    pub fn from_flat(dim: usize, mut coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                index: coords.len() / dim,
                expected: dim,
                got: coords.len() % dim,
            });
        }
        let n = coords.len() / dim;
        if n < 2 {
            return Err(Error::TooFewPoints { min: 2, got: n });
        }
        for (i, x) in coords.iter_mut().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite { index: i / dim });
            }
            // fold -0.0 into +0.0 so equality below is a plain bitwise order
            *x += 0.0;
        }
        let sample = PointSample { dim, coords };
        sample.check_distinct()?;
        Ok(sample)
    }

    /// Convenience constructor for one-dimensional data.
    pub fn one_dim(values: &[f64]) -> Result<Self> {
        Self::from_flat(1, values.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, index: usize) -> &[f64] {
        &self.coords[index * self.dim..(index + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    fn lex_cmp(&self, a: usize, b: usize) -> Ordering {
        self.point(a)
            .iter()
            .zip(self.point(b))
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    fn check_distinct(&self) -> Result<()> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.lex_cmp(a, b).then(a.cmp(&b)));
        for w in order.windows(2) {
            if self.lex_cmp(w[0], w[1]).is_eq() {
                return Err(Error::DuplicatePoints {
                    first: w[0],
                    second: w[1],
                });
            }
        }
        Ok(())
    }

    /// Indices of the points in increasing order (1-D samples only).
    pub(crate) fn sorted_order_1d(&self) -> Vec<usize> {
        debug_assert_eq!(self.dim, 1);
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.coords[a].total_cmp(&self.coords[b]));
        order
    }
}

/// Nearest-neighbor assignment for every vertex of a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct NnDigraph {
    nn_index: Vec<usize>,
    nn_distance: Vec<f64>,
    tie_flag: bool,
}

impl NnDigraph {
    pub fn len(&self) -> usize {
        self.nn_index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nn_index.is_empty()
    }

    pub fn nn_index(&self) -> &[usize] {
        &self.nn_index
    }

    pub fn nn_distance(&self) -> &[f64] {
        &self.nn_distance
    }

    /// True if at least one nearest neighbor was chosen among equidistant
    /// candidates. Counts of such digraphs depend on the smallest-index
    /// convention.
    pub fn tie_flag(&self) -> bool {
        self.tie_flag
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut indeg = alloc::vec![0usize; self.len()];
        for &w in &self.nn_index {
            indeg[w] += 1;
        }
        indeg
    }
}

/// Builds the digraph for an already sorted, strictly increasing 1-D sample.
/// Vertex `i` is the `i`-th order statistic.
pub fn build_sorted_1d(sorted: &[f64]) -> Result<NnDigraph> {
    if sorted.len() < 2 {
        return Err(Error::TooFewPoints {
            min: 2,
            got: sorted.len(),
        });
    }
    for (i, w) in sorted.windows(2).enumerate() {
        if !w[0].is_finite() || !w[1].is_finite() {
            return Err(Error::NonFinite { index: i });
        }
        if w[0] >= w[1] {
            return Err(Error::DuplicatePoints {
                first: i,
                second: i + 1,
            });
        }
    }
    let identity: Vec<usize> = (0..sorted.len()).collect();
    Ok(adjacent_nn(&identity, |p| sorted[p]))
}

/// Assigns neighbors along a sorted order. `x(p)` is the coordinate at
/// sorted position `p` and `order[p]` the original index.
fn adjacent_nn<F>(order: &[usize], x: F) -> NnDigraph
where
    F: Fn(usize) -> f64,
{
    let n = order.len();
    let mut nn_index = alloc::vec![0usize; n];
    let mut nn_distance = alloc::vec![0.0f64; n];
    let mut tie_flag = false;
    for p in 0..n {
        let (q, dist) = if p == 0 {
            (1, x(1) - x(0))
        } else if p == n - 1 {
            (n - 2, x(p) - x(p - 1))
        } else {
            let left = x(p) - x(p - 1);
            let right = x(p + 1) - x(p);
            match left.partial_cmp(&right) {
                Some(Ordering::Less) => (p - 1, left),
                Some(Ordering::Greater) => (p + 1, right),
                _ => {
                    tie_flag = true;
                    if order[p - 1] < order[p + 1] {
                        (p - 1, left)
                    } else {
                        (p + 1, right)
                    }
                }
            }
        };
        nn_index[order[p]] = order[q];
        nn_distance[order[p]] = dist;
    }
    NnDigraph {
        nn_index,
        nn_distance,
        tie_flag,
    }
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Assigns each point its Euclidean nearest neighbor. Ties go to the
/// smallest index and raise [`NnDigraph::tie_flag`].
pub fn build_nn_digraph(sample: &PointSample) -> NnDigraph {
    if sample.dim() == 1 {
        let order = sample.sorted_order_1d();
        let coords = sample.coords();
        return adjacent_nn(&order, |p| coords[order[p]]);
    }

    let n = sample.len();
    let mut best = alloc::vec![f64::INFINITY; n];
    let mut nn_index = alloc::vec![usize::MAX; n];
    let mut tied = alloc::vec![false; n];
    // Candidates for each vertex arrive in increasing index order, so a
    // strict `<` keeps the smallest-index minimizer.
    for i in 0..n {
        let pi = sample.point(i);
        for j in i + 1..n {
            let d2 = squared_distance(pi, sample.point(j));
            for (v, w) in [(i, j), (j, i)] {
                if d2 < best[v] {
                    best[v] = d2;
                    nn_index[v] = w;
                    tied[v] = false;
                } else if d2 == best[v] {
                    tied[v] = true;
                }
            }
        }
    }
    let nn_distance = (0..n)
        .map(|v| libm::sqrt(squared_distance(sample.point(v), sample.point(nn_index[v]))))
        .collect();
    NnDigraph {
        nn_index,
        nn_distance,
        tie_flag: tied.iter().any(|&t| t),
    }
}

/// Reflexive pairs, shared-NN pairs and in-degree classes of a digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCounts {
    /// `R_n`: unordered pairs that are each other's nearest neighbor.
    pub reflexive: usize,
    /// `Q_n`: unordered pairs of vertices sharing a nearest neighbor.
    pub shared: usize,
    /// `j → Q_{j,n}` for every in-degree `j` that occurs.
    pub indegree_classes: BTreeMap<usize, usize>,
}

impl PairCounts {
    /// `Q_{j,n}`, zero when no vertex has in-degree `j`.
    pub fn class(&self, j: usize) -> usize {
        self.indegree_classes.get(&j).copied().unwrap_or(0)
    }

    /// Checks the double-counting identities and, for `dim == 1`, the
    /// restriction to in-degrees 0, 1, 2.
    pub fn satisfies_invariants(&self, n: usize, dim: usize) -> bool {
        let vertices: usize = self.indegree_classes.values().sum();
        let arcs: usize = self.indegree_classes.iter().map(|(j, q)| j * q).sum();
        let shared: usize = self
            .indegree_classes
            .iter()
            .map(|(j, q)| j * j.saturating_sub(1) / 2 * q)
            .sum();
        let mut ok = vertices == n && arcs == n && shared == self.shared;
        ok &= n < 2 || self.reflexive >= 1;
        if dim == 1 {
            ok &= self.indegree_classes.keys().all(|&j| j <= 2);
            ok &= self.shared == self.class(0) && self.shared == self.class(2);
            ok &= 2 * self.shared + self.class(1) == n;
        }
        ok
    }
}

pub fn count_pairs(digraph: &NnDigraph) -> PairCounts {
    let nn = digraph.nn_index();
    let reflexive = nn
        .iter()
        .enumerate()
        .filter(|&(v, &w)| v < w && nn[w] == v)
        .count();
    let indeg = digraph.in_degrees();
    let shared = indeg.iter().map(|&d| d * d.saturating_sub(1) / 2).sum();
    let mut indegree_classes = BTreeMap::new();
    for &d in &indeg {
        *indegree_classes.entry(d).or_insert(0) += 1;
    }
    PairCounts {
        reflexive,
        shared,
        indegree_classes,
    }
}
