//! Goodness-of-fit, independence and regression tools.

use serde::{Deserialize, Serialize};

use crate::environment::RngStream;
use crate::error::{domain, Error, Result};
use crate::numerics::regularized_gamma_q;

/// Kolmogorov-Smirnov distance between the empirical CDF of `sorted` and a
/// continuous `cdf`.
pub fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if sorted.is_empty() {
        return domain("KS statistic of an empty sample");
    }
    if sorted.windows(2).any(|w| w[0] > w[1]) {
        return domain("KS sample is not sorted");
    }
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    // Ties: the empirical CDF jumps by the multiplicity at each distinct value.
    while i < sorted.len() {
        let x = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == x {
            j += 1;
        }
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max(j as f64 / n - f);
        i = j;
    }
    Ok(d.clamp(0.0, 1.0))
}

/// Sorts and returns the KS statistic with its asymptotic p-value.
pub fn ks_test(mut samples: Vec<f64>, cdf: impl Fn(f64) -> f64) -> Result<(f64, f64)> {
    samples.sort_by(f64::total_cmp);
    let d = ks_statistic(&samples, cdf)?;
    Ok((d, kolmogorov_p(d, samples.len())))
}

/// Asymptotic p-value `P(D_n ≥ d)` with Stephens' small-sample correction.
pub fn kolmogorov_p(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    kolmogorov_q(lambda)
}

/// `Q_KS(λ) = 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²λ²}`.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut s = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let t = (-2.0 * kf * kf * lambda * lambda).exp();
        s += if k % 2 == 1 { t } else { -t };
        if t < 1e-17 {
            break;
        }
    }
    (2.0 * s).clamp(0.0, 1.0)
}

/// Pearson chi-square statistic; cells with zero expectation must be empty.
pub fn chi_square_statistic(observed: &[u64], expected: &[f64]) -> Result<f64> {
    if observed.len() != expected.len() || observed.is_empty() {
        return domain("observed and expected counts must be nonempty and aligned");
    }
    let mut s = 0.0;
    for (&o, &e) in observed.iter().zip(expected) {
        if e <= 0.0 {
            if o > 0 {
                return domain("observation in a cell of zero probability");
            }
            continue;
        }
        let d = o as f64 - e;
        s += d * d / e;
    }
    Ok(s)
}

/// Upper tail of the chi-square law with `dof` degrees of freedom.
pub fn chi_square_p(stat: f64, dof: usize) -> Result<f64> {
    if dof == 0 {
        return Ok(if stat > 0.0 { 0.0 } else { 1.0 });
    }
    regularized_gamma_q(dof as f64 / 2.0, stat.max(0.0) / 2.0)
}

/// Chi-square goodness of fit of counts against cell probabilities.
/// Returns `(statistic, dof, p)`.
pub fn chi_square_test(observed: &[u64], probs: &[f64]) -> Result<(f64, usize, f64)> {
    let n: u64 = observed.iter().sum();
    let expected: Vec<f64> = probs.iter().map(|p| p * n as f64).collect();
    let stat = chi_square_statistic(observed, &expected)?;
    let dof = probs.iter().filter(|&&p| p > 0.0).count().saturating_sub(1);
    Ok((stat, dof, chi_square_p(stat, dof)?))
}

/// Ranks starting at 1, ties receiving their average rank.
pub fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut r = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}

pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let mut c = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in a.iter().zip(b) {
        c += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    if va == 0.0 || vb == 0.0 {
        0.0
    } else {
        c / (va * vb).sqrt()
    }
}

pub fn spearman(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() || a.len() < 2 {
        return domain("Spearman correlation needs two aligned samples of size at least 2");
    }
    Ok(pearson(&ranks(a), &ranks(b)))
}

/// Centered, unit-norm ranks so that a rank correlation is a dot product.
fn normalized_ranks(xs: &[f64]) -> Vec<f64> {
    let r = ranks(xs);
    let n = r.len() as f64;
    let m = (n + 1.0) / 2.0;
    let c: Vec<f64> = r.iter().map(|x| x - m).collect();
    let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        c
    } else {
        c.into_iter().map(|x| x / norm).collect()
    }
}

/// Rank vectors of the two summaries, collapsed to one when they coincide
/// (blocks of length one).
fn summary_ranks(max: &[f64], sum: &[f64]) -> Vec<Vec<f64>> {
    let a = normalized_ranks(max);
    let b = normalized_ranks(sum);
    if a == b {
        vec![a]
    } else {
        vec![a, b]
    }
}

/// Summary `(max, sum)` of each block.
pub fn block_summaries(blocks: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let max = blocks.iter().map(|b| b.iter().copied().fold(f64::NEG_INFINITY, f64::max)).collect();
    let sum = blocks.iter().map(|b| b.iter().sum()).collect();
    (max, sum)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PermutationResult {
    pub statistic: f64,
    pub p_value: f64,
    pub permutations: usize,
}

/// Permutation test of independence between paired blocks.
///
/// Each block is reduced to `(max, sum)`; the statistic is the largest
/// absolute Spearman correlation among the four cross pairs, and the null
/// distribution comes from shuffling the pairing.
pub fn permutation_independence_test(
    a: &[Vec<f64>],
    b: &[Vec<f64>],
    permutations: usize,
    rng: &mut RngStream,
) -> Result<PermutationResult> {
    if a.len() != b.len() || a.len() < 3 {
        return domain("independence test needs at least 3 aligned block pairs");
    }
    if a.iter().chain(b).any(|blk| blk.is_empty()) {
        return domain("independence test got an empty block");
    }
    let (amax, asum) = block_summaries(a);
    let (bmax, bsum) = block_summaries(b);
    let xa = summary_ranks(&amax, &asum);
    let xb = summary_ranks(&bmax, &bsum);
    let stat = |perm: &[usize]| {
        let mut best: f64 = 0.0;
        for u in &xa {
            for v in &xb {
                let c: f64 = perm.iter().enumerate().map(|(i, &j)| u[i] * v[j]).sum();
                best = best.max(c.abs());
            }
        }
        best
    };
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let observed = stat(&perm);
    let mut exceed = 0usize;
    for _ in 0..permutations {
        for i in (1..n).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            perm.swap(i, j);
        }
        if stat(&perm) >= observed {
            exceed += 1;
        }
    }
    Ok(PermutationResult {
        statistic: observed,
        p_value: (1 + exceed) as f64 / (1 + permutations) as f64,
        permutations,
    })
}

/// Smallest permutation count whose minimal p-value clears `alpha`.
pub fn permutations_for(alpha: f64) -> usize {
    ((2.0 / alpha).ceil() as usize).max(999)
}

/// Per-test level for a family of `m` tests at overall level `alpha`.
pub fn bonferroni(alpha: f64, m: usize) -> f64 {
    alpha / m.max(1) as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub slope_se: f64,
    /// 95% interval for the slope from the t law on `n − 2` degrees of freedom.
    pub slope_ci: (f64, f64),
}

/// Least squares line through `(log x, log y)`.
pub fn fit_power_law(x: &[f64], y: &[f64]) -> Result<PowerFit> {
    if x.len() != y.len() || x.len() < 3 {
        return domain("power-law fit needs at least 3 aligned points");
    }
    if x.iter().chain(y).any(|&v| !(v > 0.0) || !v.is_finite()) {
        return domain("power-law fit needs positive finite data");
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        return domain("power-law fit needs at least two distinct x values");
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = ly.iter().map(|b| (b - my) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = lx.iter().zip(&ly).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let r2 = if syy == 0.0 { 1.0 } else { (1.0 - sse / syy).clamp(0.0, 1.0) };
    let dof = lx.len() - 2;
    let slope_se = (sse / dof as f64 / sxx).sqrt();
    let t = t_quantile_975(dof);
    Ok(PowerFit { slope, intercept, r2, slope_se, slope_ci: (slope - t * slope_se, slope + t * slope_se) })
}

fn t_quantile_975(dof: usize) -> f64 {
    const T: [f64; 10] = [12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228];
    match dof {
        0 => f64::INFINITY,
        d if d <= 10 => T[d - 1],
        d if d <= 30 => 2.228 - (d - 10) as f64 * (2.228 - 2.042) / 20.0,
        _ => 1.96,
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Mean and its standard error.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = mean(xs);
    if xs.len() < 2 {
        return (m, f64::INFINITY);
    }
    let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

pub fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// Linear-interpolation quantile (type 7).
pub fn quantile(xs: &[f64], q: f64) -> Result<f64> {
    if xs.is_empty() || !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain(format!("quantile {q} of a sample of size {}", xs.len())));
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let h = (v.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    Ok(v[lo] + (h - lo as f64) * (v[hi] - v[lo]))
}

pub fn median(xs: &[f64]) -> Result<f64> {
    quantile(xs, 0.5)
}
