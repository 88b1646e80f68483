//! Distribution-comparison statistics for simulation output.

/// One-sample Kolmogorov-Smirnov statistic against a reference
/// distribution that may carry atoms.
///
/// `cdf` is the right-continuous distribution function and `cdf_left` its
/// left limit; at continuity points the two agree, at an atom (such as the
/// probability mass parked at the transmit cap) they differ by the atom
/// mass. Tied samples are grouped so that the empirical step compared at
/// each distinct value covers the full tie group, which the textbook
/// `(i-1)/n, i/n` formulation gets wrong in the presence of ties.
///
/// `samples` must be sorted ascending.
pub fn ks_statistic<F, G>(samples: &[f64], cdf: F, cdf_left: G) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    assert!(!samples.is_empty(), "KS statistic needs at least one sample");
    debug_assert!(
        samples.windows(2).all(|w| w[0] <= w[1]),
        "samples must be sorted"
    );
    let n = samples.len() as f64;
    let mut d = 0.0f64;
    let mut i = 0usize;
    while i < samples.len() {
        let v = samples[i];
        let mut j = i + 1;
        while j < samples.len() && samples[j] == v {
            j += 1;
        }
        let below = i as f64 / n;
        let upto = j as f64 / n;
        d = d.max((upto - cdf(v)).abs());
        d = d.max((below - cdf_left(v)).abs());
        i = j;
    }
    d
}

/// KS statistic against a continuous reference distribution.
pub fn ks_statistic_continuous<F>(samples: &[f64], cdf: F) -> f64
where
    F: Fn(f64) -> f64 + Copy,
{
    ks_statistic(samples, cdf, cdf)
}

///// Asymptotic KS critical value at significance `q` for `n` samples:
/// `sqrt(-ln(q/2) / 2) / sqrt(n)`.
pub fn ks_critical_value(n: usize, q: f64) -> f64 {
    assert!(n > 0 && q > 0.0 && q < 1.0);
    ((-(q / 2.0).ln()) / 2.0).sqrt() / (n as f64).sqrt()
}

/// Empirical distribution function of sorted samples evaluated at `x`
/// (right-continuous convention).
pub fn empirical_cdf(sorted: &[f64], x: f64) -> f64 {
    let count = sorted.partition_point(|&s| s <= x);
    count as f64 / sorted.len() as f64
}

/// Pearson chi-square statistic for observed counts against expected
/// counts. Expected counts must be positive.
pub fn chi_square_statistic(observed: &[u64], expected: &[f64]) -> f64 {
    assert_eq!(observed.len(), expected.len());
    observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            assert!(e > 0.0, "expected counts must be positive");
            let diff = o as f64 - e;
            diff * diff / e
        })
        .sum()
}

/// Sample mean and standard error of the mean.
pub fn mean_and_standard_error(samples: &[f64]) -> (f64, f64) {
    assert!(samples.len() >= 2, "standard error needs at least two samples");
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|&x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
