use serde::{Deserialize, Serialize};

use crate::environment::{sample_log_gamma, RngStream};
use crate::error::{domain, geometry, Result};
use crate::stationary::RatioSeq;

/// Two-sided multiplicative walk `W` on `[lo, hi]`, stored as logs:
/// `W_0 = 1`, `W_n = Π_{j=1}^{n} X_j` for `n ≥ 1` and
/// `W_n = Π_{j=n+1}^{0} X_j⁻¹` for `n ≤ −1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoSidedWalk {
    lo: i64,
    logs: Vec<f64>,
}

impl TwoSidedWalk {
    /// Walk from log-steps `log X_k`, `k ∈ [start, start + len − 1]`, with
    /// `start ≤ 1` and the window reaching `0`.
    pub fn from_log_steps(start: i64, steps: &[f64]) -> Result<Self> {
        let end = start + steps.len() as i64 - 1;
        if start > 1 || end < 0 {
            return geometry(format!("step window [{start}, {end}] must straddle the origin"));
        }
        let lo = start - 1;
        let mut logs = vec![0.0; steps.len() + 1];
        let zero = (0 - lo) as usize;
        for k in zero + 1..logs.len() {
            logs[k] = logs[k - 1] + steps[k - 1];
        }
        for k in (0..zero).rev() {
            logs[k] = logs[k + 1] - steps[k];
        }
        Ok(TwoSidedWalk { lo, logs })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.logs.len() as i64 - 1
    }

    pub fn log_value(&self, n: i64) -> f64 {
        assert!(n >= self.lo && n <= self.hi(), "index {n} outside [{}, {}]", self.lo, self.hi());
        self.logs[(n - self.lo) as usize]
    }

    pub fn value(&self, n: i64) -> f64 {
        self.log_value(n).exp()
    }

    pub fn logs(&self) -> &[f64] {
        &self.logs
    }
}

/// `X_i = J_i / Ĵ_i` and the walk it generates.
pub fn ratio_walk(forward_j: &RatioSeq, backward_j: &RatioSeq) -> Result<TwoSidedWalk> {
    forward_j.check_aligned(backward_j)?;
    let steps: Vec<f64> = forward_j.logs().iter().zip(backward_j.logs()).map(|(a, b)| a - b).collect();
    TwoSidedWalk::from_log_steps(forward_j.start(), &steps)
}

/// `S_0 = 0, S_1, …, S_n` with i.i.d. steps `log G^α − log G^β`.
pub fn gamma_log_walk(alpha: f64, beta: f64, n: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && beta > 0.0) {
        return domain(format!("walk parameters must be positive, got {alpha}, {beta}"));
    }
    let mut s = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    s.push(acc);
    for _ in 0..n {
        acc += sample_log_gamma(alpha, rng)? - sample_log_gamma(beta, rng)?;
        s.push(acc);
    }
    Ok(s)
}
