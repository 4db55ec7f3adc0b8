//! Pass/fail rules. Each is a pure function of recorded statistics.

/// `lo ≤ slope ≤ hi`.
pub fn exponent_in_window(slope: f64, lo: f64, hi: f64) -> bool {
    slope.is_finite() && lo <= slope && slope <= hi
}

/// `value ≤ threshold`.
pub fn at_most(value: f64, threshold: f64) -> bool {
    value.is_finite() && value <= threshold
}

/// `|estimate − target| ≤ k · se`.
pub fn within_se(estimate: f64, target: f64, se: f64, k: f64) -> bool {
    (estimate - target).abs() <= k * se
}

/// Every consecutive pair satisfies `m_{i+1} ≤ m_i + k·√(s_i² + s_{i+1}²)`.
/// Returns the indices `i` of offending pairs.
pub fn non_increasing_within(means: &[f64], ses: &[f64], k: f64) -> Vec<usize> {
    means
        .windows(2)
        .zip(ses.windows(2))
        .enumerate()
        .filter(|(_, (m, s))| m[1] > m[0] + k * (s[0] * s[0] + s[1] * s[1]).sqrt())
        .map(|(i, _)| i)
        .collect()
}

/// A test passes when its p-value is at least the per-test level.
pub fn test_passes(p_value: f64, level: f64) -> bool {
    p_value >= level
}
