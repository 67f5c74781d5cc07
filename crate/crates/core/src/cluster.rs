//! Two-group classification of scalar indicator values with 1-D k-means,
//! scored by the fraction of recordings assigned to the right group.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KMeans1d {
    pub assignments: Vec<usize>,
    /// Ascending.
    pub centroids: Vec<f64>,
    pub iterations: usize,
}

/// Deterministic Lloyd iteration on scalars.
///
/// Centroids start evenly spaced between the minimum and maximum value
/// (for `k = 2`, exactly at the minimum and the maximum). Each iteration
/// assigns every value to its nearest centroid, ties going to the lower
/// one, then moves each centroid to the mean of its members. It stops once
/// an update leaves every centroid where it was, or after
/// [`MAX_ITERATIONS`].
pub fn kmeans_1d(values: &[f64], k: usize) -> Result<KMeans1d> {
    if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::NonFiniteFeature(bad));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    if k < 2 || sorted.len() < k {
        return Err(Error::TooFewDistinct {
            k,
            distinct: sorted.len(),
        });
    }
    let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
    let mut centroids: Vec<f64> = (0..k)
        .map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64)
        .collect();
    centroids[k - 1] = hi;

    let mut assignments = vec![0usize; values.len()];
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        for (slot, &v) in assignments.iter_mut().zip(values) {
            *slot = nearest(&centroids, v);
        }
        let mut sums = vec![0.0; k];
        let mut counts = vec![0usize; k];
        for (&a, &v) in assignments.iter().zip(values) {
            sums[a] += v;
            counts[a] += 1;
        }
        let updated: Vec<f64> = centroids
            .iter()
            .zip(sums.iter().zip(&counts))
            .map(|(&c, (&s, &n))| if n > 0 { s / n as f64 } else { c })
            .collect();
        let moved = updated != centroids;
        centroids = updated;
        if !moved {
            break;
        }
    }

    // Lloyd keeps 1-D clusters contiguous, so centroids stay ordered; the
    // relabel only guards against float ties.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| centroids[a].total_cmp(&centroids[b]));
    if order.iter().enumerate().any(|(i, &o)| i != o) {
        let mut rank = vec![0; k];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        for a in &mut assignments {
            *a = rank[*a];
        }
        centroids = order.iter().map(|&o| centroids[o]).collect();
    }

    Ok(KMeans1d {
        assignments,
        centroids,
        iterations,
    })
}

fn nearest(centroids: &[f64], v: f64) -> usize {
    let mut best = 0;
    let mut best_dist = (v - centroids[0]).abs();
    for (i, c) in centroids.iter().enumerate().skip(1) {
        let d = (v - c).abs();
        if d < best_dist {
            best = i;
            best_dist = d;
        }
    }
    best
}

/// Best-bijection accuracy of a two-cluster assignment against two labels:
/// the larger of the two label↔cluster matchings, divided by the number of
/// items.
pub fn rand_accuracy<T: PartialEq>(assignments: &[usize], truth: &[T]) -> Result<f64> {
    Ok(decision_counts(assignments, truth)?.ratio())
}

/// Correct decisions under the best bijection, and total decisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionCounts {
    pub correct: usize,
    pub total: usize,
}

impl DecisionCounts {
    pub fn ratio(&self) -> f64 {
        self.correct as f64 / self.total as f64
    }
}

pub fn decision_counts<T: PartialEq>(assignments: &[usize], truth: &[T]) -> Result<DecisionCounts> {
    if assignments.len() != truth.len() {
        return Err(Error::LengthMismatch {
            assignments: assignments.len(),
            labels: truth.len(),
        });
    }
    if let Some(&bad) = assignments.iter().find(|&&a| a > 1) {
        return Err(Error::InvalidClusterId(bad));
    }
    let mut labels: Vec<&T> = Vec::new();
    for t in truth {
        if !labels.contains(&t) {
            labels.push(t);
        }
    }
    if labels.len() != 2 {
        return Err(Error::LabelCount(labels.len()));
    }
    // matching label[0] ↔ cluster 0 and label[1] ↔ cluster 1
    let direct = assignments
        .iter()
        .zip(truth)
        .filter(|&(&a, t)| (a == 0) == (t == labels[0]))
        .count();
    let total = truth.len();
    Ok(DecisionCounts {
        correct: direct.max(total - direct),
        total,
    })
}

/// One dataset's recording-level values of a single indicator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupFeatures {
    pub name: String,
    pub values: Vec<f64>,
}

impl GroupFeatures {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }
}

/// Feature values aligned with their group of origin (0 or 1).
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledFeatures {
    pub values: Vec<f64>,
    pub truth: Vec<usize>,
}

impl LabeledFeatures {
    pub fn from_pair(a: &GroupFeatures, b: &GroupFeatures) -> Self {
        let values = a.values.iter().chain(&b.values).copied().collect();
        let truth = std::iter::repeat_n(0, a.values.len())
            .chain(std::iter::repeat_n(1, b.values.len()))
            .collect();
        Self { values, truth }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringOutcome {
    pub assignments: Vec<usize>,
    pub centroids: [f64; 2],
    pub ri: f64,
    pub correct: usize,
    pub total: usize,
    pub iterations: usize,
}

/// Clusters the pooled values of two groups with `k = 2` and scores the
/// split against group membership.
pub fn pairwise_classify(a: &GroupFeatures, b: &GroupFeatures) -> Result<ClusteringOutcome> {
    if a.values.is_empty() {
        return Err(Error::EmptyGroup(a.name.clone()));
    }
    if b.values.is_empty() {
        return Err(Error::EmptyGroup(b.name.clone()));
    }
    let features = LabeledFeatures::from_pair(a, b);
    let km = kmeans_1d(&features.values, 2)?;
    let counts = decision_counts(&km.assignments, &features.truth)?;
    Ok(ClusteringOutcome {
        centroids: [km.centroids[0], km.centroids[1]],
        ri: counts.ratio(),
        correct: counts.correct,
        total: counts.total,
        iterations: km.iterations,
        assignments: km.assignments,
    })
}
