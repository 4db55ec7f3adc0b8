use serde::{Deserialize, Serialize};

use super::gamma::sample_log_inverse_gamma;
use super::rng::RngStream;
use crate::error::{domain, Result};
use crate::lattice::Vertex;
use crate::stationary::{RatioKind, RatioSeq};

/// Independent boundary weights on the two axes through `base`: I-type on
/// `base + i·e₁` and J-type on `base + j·e₂`, indexed from 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryWeights {
    pub base: Vertex,
    pub horizontal: RatioSeq,
    pub vertical: RatioSeq,
}

impl BoundaryWeights {
    /// `I ~ Ga⁻¹(σ−α)` on `m` horizontal sites, `J ~ Ga⁻¹(α)` on `n` vertical sites.
    pub fn sample(base: Vertex, alpha: f64, sigma: f64, m: usize, n: usize, rng: &mut RngStream) -> Result<Self> {
        if !(alpha > 0.0 && alpha < sigma) {
            return domain(format!("need 0 < alpha < sigma, got alpha={alpha}, sigma={sigma}"));
        }
        Self::sample_with(base, sigma - alpha, alpha, m, n, rng)
    }

    /// Boundary with explicit parameters for the two axes.
    pub fn sample_with(base: Vertex, theta_h: f64, theta_v: f64, m: usize, n: usize, rng: &mut RngStream) -> Result<Self> {
        let mut hs = rng.derive(1);
        let mut vs = rng.derive(2);
        let h = (0..m).map(|_| sample_log_inverse_gamma(theta_h, &mut hs)).collect::<Result<Vec<_>>>()?;
        let v = (0..n).map(|_| sample_log_inverse_gamma(theta_v, &mut vs)).collect::<Result<Vec<_>>>()?;
        Ok(BoundaryWeights {
            base,
            horizontal: RatioSeq::from_logs_allow_empty(1, h, RatioKind::I, theta_h),
            vertical: RatioSeq::from_logs_allow_empty(1, v, RatioKind::J, theta_v),
        })
    }
}
