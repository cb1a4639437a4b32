//! Two-sided Wilcoxon rank-sum (Mann-Whitney) test.
//!
//! Small pooled samples (`n_a + n_b <= 12`) use the exact permutation
//! distribution of the rank sum, counted by dynamic programming over
//! midranks. Larger samples use the normal approximation with tie-corrected
//! variance and a continuity correction, matching the common statistics-
//! package defaults.

/// Largest pooled sample size handled by exact enumeration.
pub const EXACT_MAX_TOTAL: usize = 12;

/// Two-sided p-value for the hypothesis that the two samples come from the
/// same distribution.
///
/// Degenerate inputs with no rank variation (for example both samples
/// constant and equal) return `p = 1.0`.
///
/// # Panics
///
/// Panics if either sample is empty or contains NaN.
pub fn wilcoxon_rank_sum(sample_a: &[f64], sample_b: &[f64]) -> f64 {
    assert!(!sample_a.is_empty(), "sample A is empty");
    assert!(!sample_b.is_empty(), "sample B is empty");
    assert!(
        sample_a.iter().chain(sample_b).all(|v| !v.is_nan()),
        "samples must not contain NaN"
    );

    let doubled = doubled_midranks(sample_a, sample_b);
    let n_a = sample_a.len();
    let total = n_a + sample_b.len();
    let w_doubled: u64 = doubled[..n_a].iter().sum();

    if total <= EXACT_MAX_TOTAL {
        exact_two_sided(&doubled, n_a, w_doubled)
    } else {
        normal_two_sided(&doubled, n_a, w_doubled)
    }
}

/// Midranks of the pooled sample, doubled so ties stay integral. The first
/// `sample_a.len()` entries belong to sample A.
fn doubled_midranks(sample_a: &[f64], sample_b: &[f64]) -> Vec<u64> {
    let n = sample_a.len() + sample_b.len();
    let mut order: Vec<usize> = (0..n).collect();
    let value = |idx: usize| {
        if idx < sample_a.len() {
            sample_a[idx]
        } else {
            sample_b[idx - sample_a.len()]
        }
    };
    order.sort_by(|&x, &y| value(x).partial_cmp(&value(y)).expect("NaN was rejected"));

    let mut doubled = vec![0u64; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && value(order[end]) == value(order[start]) {
            end += 1;
        }
        // Tie group occupies 1-based ranks start+1 ..= end; the doubled
        // midrank is their integral average times two.
        let doubled_midrank = (start + end + 1) as u64;
        for &idx in &order[start..end] {
            doubled[idx] = doubled_midrank;
        }
        start = end;
    }
    doubled
}

/// Exact two-sided p: `min(1, 2 * min(P(W <= w), P(W >= w)))` over all
/// equally likely assignments of `n_a` ranks to sample A.
fn exact_two_sided(doubled: &[u64], n_a: usize, w_doubled: u64) -> f64 {
    let max_sum: u64 = doubled.iter().sum();
    // counts[j][s]: subsets of size j with doubled-rank sum s.
    let mut counts = vec![vec![0u64; max_sum as usize + 1]; n_a + 1];
    counts[0][0] = 1;
    for &rank in doubled {
        for j in (0..n_a).rev() {
            for s in 0..=(max_sum - rank) as usize {
                if counts[j][s] > 0 {
                    counts[j + 1][s + rank as usize] += counts[j][s];
                }
            }
        }
    }
    let distribution = &counts[n_a];
    let total: u64 = distribution.iter().sum();
    let at_most: u64 = distribution[..=w_doubled as usize].iter().sum();
    let at_least: u64 = distribution[w_doubled as usize..].iter().sum();
    let tail = at_most.min(at_least) as f64 / total as f64;
    (2.0 * tail).min(1.0)
}

/// Normal approximation with tie-corrected variance and continuity
/// correction.
fn normal_two_sided(doubled: &[u64], n_a: usize, w_doubled: u64) -> f64 {
    let n = doubled.len() as f64;
    let n_a_f = n_a as f64;
    let n_b_f = n - n_a_f;

    let w = w_doubled as f64 / 2.0;
    let mean = n_a_f * (n + 1.0) / 2.0;

    // Tie correction: sum of t^3 - t over tie groups of the pooled sample.
    let mut sorted = doubled.to_vec();
    sorted.sort_unstable();
    let mut tie_term = 0.0;
    let mut idx = 0;
    while idx < sorted.len() {
        let mut end = idx + 1;
        while end < sorted.len() && sorted[end] == sorted[idx] {
            end += 1;
        }
        let t = (end - idx) as f64;
        tie_term += t * t * t - t;
        idx = end;
    }
    let variance = n_a_f * n_b_f / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if variance <= 0.0 {
        return 1.0; // all observations tied: no rank information
    }

    let centered = w - mean;
    let corrected = if centered > 0.5 {
        centered - 0.5
    } else if centered < -0.5 {
        centered + 0.5
    } else {
        0.0
    };
    let z = corrected / variance.sqrt();
    libm::erfc(z.abs() / std::f64::consts::SQRT_2)
}

/// Sample mean.
pub fn mean(values: &[f64]) -> f64 {
    assert!(!values.is_empty());
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation (n - 1 denominator); zero for a single value.
pub fn sample_std(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    (ss / (values.len() - 1) as f64).sqrt()
}
