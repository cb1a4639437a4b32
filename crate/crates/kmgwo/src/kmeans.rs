//! Lloyd's K-means over position vectors.
//!
//! Minimizes the within-cluster sum of squared Euclidean distances. Sized
//! for clustering optimizer populations (tens of points), so distances are
//! exact and there are no neighbor structures.

use crate::rng::UniformSource;
use crate::{Error, Result};

/// Result of a clustering run.
#[derive(Debug, Clone)]
pub struct Clustering {
    pub centroids: Vec<Vec<f64>>,
    /// Cluster label per input point, each in `0..k`; every cluster has at
    /// least one member.
    pub assignments: Vec<usize>,
    /// Within-cluster sum of squared distances of the final state.
    pub objective_j: f64,
    pub iterations_used: usize,
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Sum of squared distances of each point to its assigned centroid.
///
/// # Panics
///
/// Panics on dimension mismatch or an out-of-range label.
pub fn objective_j(points: &[Vec<f64>], centroids: &[Vec<f64>], assignments: &[usize]) -> f64 {
    assert_eq!(points.len(), assignments.len(), "one label per point");
    points
        .iter()
        .zip(assignments)
        .map(|(point, &label)| {
            let centroid = centroids.get(label).unwrap_or_else(|| {
                panic!(
                    "label {label} out of range for {} centroids",
                    centroids.len()
                )
            });
            assert_eq!(
                point.len(),
                centroid.len(),
                "point/centroid dimension mismatch"
            );
            squared_distance(point, centroid)
        })
        .sum()
}

/// Labels each point with its nearest centroid; ties go to the lowest index.
pub fn assign(points: &[Vec<f64>], centroids: &[Vec<f64>]) -> Vec<usize> {
    assert!(
        !centroids.is_empty(),
        "assign requires at least one centroid"
    );
    points
        .iter()
        .map(|point| {
            let mut best = 0;
            let mut best_dist = squared_distance(point, &centroids[0]);
            for (label, centroid) in centroids.iter().enumerate().skip(1) {
                let dist = squared_distance(point, centroid);
                if dist < best_dist {
                    best = label;
                    best_dist = dist;
                }
            }
            best
        })
        .collect()
}

/// Componentwise mean per cluster. A cluster with no members receives the
/// position of the point farthest from its own cluster's mean.
pub fn recompute_centroids(points: &[Vec<f64>], assignments: &[usize], k: usize) -> Vec<Vec<f64>> {
    assert!(k > 0);
    assert_eq!(points.len(), assignments.len());
    assert!(
        assignments.iter().all(|&label| label < k),
        "label out of range"
    );
    let dim = points[0].len();

    let mut sums = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (point, &label) in points.iter().zip(assignments) {
        counts[label] += 1;
        for (s, x) in sums[label].iter_mut().zip(point) {
            *s += x;
        }
    }
    let mut centroids: Vec<Vec<f64>> = sums
        .iter()
        .zip(&counts)
        .map(|(sum, &count)| {
            if count == 0 {
                Vec::new() // filled below
            } else {
                sum.iter().map(|s| s / count as f64).collect()
            }
        })
        .collect();

    for label in 0..k {
        if counts[label] == 0 {
            let farthest = farthest_point(points, assignments, &centroids, None);
            centroids[label] = points[farthest].clone();
        }
    }
    centroids
}

/// Index of the point with the largest distance to its assigned centroid,
/// optionally restricted to clusters that can spare a member. Ties resolve
/// to the lowest index.
fn farthest_point(
    points: &[Vec<f64>],
    assignments: &[usize],
    centroids: &[Vec<f64>],
    member_counts: Option<&[usize]>,
) -> usize {
    let mut best = None;
    let mut best_dist = f64::NEG_INFINITY;
    for (idx, (point, &label)) in points.iter().zip(assignments).enumerate() {
        if let Some(counts) = member_counts {
            if counts[label] < 2 {
                continue;
            }
        }
        if centroids[label].is_empty() {
            continue;
        }
        let dist = squared_distance(point, &centroids[label]);
        if dist > best_dist {
            best_dist = dist;
            best = Some(idx);
        }
    }
    best.expect("no eligible point for empty-cluster repair")
}

/// Moves the globally farthest point into each empty cluster so every
/// cluster keeps at least one member. Donor clusters must keep two.
fn repair_empty_clusters(
    points: &[Vec<f64>],
    assignments: &mut [usize],
    centroids: &mut [Vec<f64>],
) {
    let k = centroids.len();
    loop {
        let mut counts = vec![0usize; k];
        for &label in assignments.iter() {
            counts[label] += 1;
        }
        let Some(empty) = counts.iter().position(|&c| c == 0) else {
            return;
        };
        let moved = farthest_point(points, assignments, centroids, Some(&counts));
        assignments[moved] = empty;
        centroids[empty] = points[moved].clone();
    }
}

/// Lloyd's algorithm with Forgy initialization.
///
/// Initial centroids are `k` distinct points sampled without replacement,
/// consuming exactly `k` uniform draws (one index draw per centroid, over
/// the points not yet chosen). Iterations alternate assignment and centroid
/// recomputation until the labels stop changing or `max_iterations` is hit;
/// the objective is nonincreasing from iteration to iteration.
pub fn lloyd<R: UniformSource>(
    points: &[Vec<f64>],
    k: usize,
    rng: &mut R,
    max_iterations: usize,
) -> Result<Clustering> {
    let (clustering, _) = lloyd_traced(points, k, rng, max_iterations)?;
    Ok(clustering)
}

/// [`lloyd`] plus the per-iteration objective values, for descent checks.
pub fn lloyd_traced<R: UniformSource>(
    points: &[Vec<f64>],
    k: usize,
    rng: &mut R,
    max_iterations: usize,
) -> Result<(Clustering, Vec<f64>)> {
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    if points.len() < k {
        return Err(Error::InvalidConfig(format!(
            "cannot split {} points into {k} clusters",
            points.len()
        )));
    }
    if max_iterations == 0 {
        return Err(Error::InvalidConfig(
            "max_iterations must be at least 1".into(),
        ));
    }

    // Forgy: k distinct indices, uniformly without replacement.
    let mut remaining: Vec<usize> = (0..points.len()).collect();
    let mut centroids: Vec<Vec<f64>> = (0..k)
        .map(|_| {
            let pick = rng.index(remaining.len());
            points[remaining.swap_remove(pick)].clone()
        })
        .collect();

    let mut assignments: Vec<usize> = Vec::new();
    let mut objective_trace: Vec<f64> = Vec::new();
    let mut iterations_used = 0;

    for _ in 0..max_iterations {
        iterations_used += 1;
        let mut next = assign(points, &centroids);
        repair_empty_clusters(points, &mut next, &mut centroids);
        let converged = next == assignments;
        assignments = next;
        centroids = recompute_centroids(points, &assignments, k);
        let j = objective_j(points, &centroids, &assignments);
        if let Some(&previous) = objective_trace.last() {
            debug_assert!(j <= previous + 1e-12 * previous.abs().max(1.0));
        }
        objective_trace.push(j);
        if converged {
            break;
        }
    }

    let objective = *objective_trace.last().expect("at least one iteration ran");
    Ok((
        Clustering {
            centroids,
            assignments,
            objective_j: objective,
            iterations_used,
        },
        objective_trace,
    ))
}
