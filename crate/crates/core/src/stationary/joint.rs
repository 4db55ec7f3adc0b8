//! Two stationary quadrants at the same base, parameters `λ < ρ`, with
//! ordered boundaries and a common lower boundary `η`.

use super::half_line::{adaptive_depth, half_line_logs};
use super::quadrant::StationaryQuadrant;
use super::sequence::{RatioKind, RatioSeq};
use crate::environment::{
    inv_gamma_quantile, monotone_recouple, sample_log_inverse_gamma, BoundaryWeights, RngStream, WeightField,
};
use crate::error::{domain, geometry, Result};
use crate::lattice::{Rect, Vertex};

/// Seed error tolerance used to pick the strip depth.
pub const JOINT_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct JointStationaryPair {
    lambda: f64,
    rho: f64,
    sigma: f64,
    depth: usize,
    lower: StationaryQuadrant,
    upper: StationaryQuadrant,
    eta: BoundaryWeights,
    column_rho: RatioSeq,
    column_lambda: RatioSeq,
}

impl JointStationaryPair {
    pub fn base(&self) -> Vertex {
        self.lower.base()
    }

    pub fn params(&self) -> (f64, f64, f64) {
        (self.lambda, self.rho, self.sigma)
    }

    /// Strip depth below the base.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The λ quadrant.
    pub fn lower(&self) -> &StationaryQuadrant {
        &self.lower
    }

    /// The ρ quadrant.
    pub fn upper(&self) -> &StationaryQuadrant {
        &self.upper
    }

    /// `η`: horizontal entries `Ga⁻¹(σ)` below `I^λ`, vertical entries
    /// `Ga⁻¹(σ)` below `J^ρ`.
    pub fn eta(&self) -> &BoundaryWeights {
        &self.eta
    }

    /// `(J^ρ, J^λ)` on the vertical line through the base over the whole
    /// window `(−M, n]`, indexed by row offset.
    pub fn vertical_window(&self) -> (&RatioSeq, &RatioSeq) {
        (&self.column_rho, &self.column_lambda)
    }

    /// Whether `η ≤ I^λ ≤ I^ρ` and `η ≤ J^ρ ≤ J^λ` hold at every site.
    pub fn ordering_holds(&self) -> bool {
        let (l, u) = (self.lower.boundary(), self.upper.boundary());
        let h = (1..=l.horizontal.end()).all(|k| {
            self.eta.horizontal.log_at(k) <= l.horizontal.log_at(k) && l.horizontal.log_at(k) <= u.horizontal.log_at(k)
        });
        let v = (1..=l.vertical.end()).all(|k| {
            self.eta.vertical.log_at(k) <= u.vertical.log_at(k) && u.vertical.log_at(k) <= l.vertical.log_at(k)
        });
        h && v
    }
}

/// Joint pair on `rect = ⟦o, o + (m, n)⟧`.
///
/// Column 0 carries `(J^ρ, J^λ) = (Y^ρ, D(Y^λ, Y^ρ))` over rows `(−M, n]`.
/// Moving right, each column is pushed through the bulk below `o`:
/// `J^{α,k} = D(J^{α,k−1}, Y^k)` and `I^α_{o+k·e₁}` is the S-output at row
/// 0. The `Ga⁻¹(σ)` weights of the strip below `o` are drawn from `rng`, so
/// the boundaries are independent of `bulk`, which is only read strictly
/// inside the quadrant. Seeds of the two parameters share a uniform so that
/// the ordering is exact.
pub fn build_joint_pair(
    o: Vertex,
    lambda: f64,
    rho: f64,
    sigma: f64,
    rect: Rect,
    bulk: &WeightField,
    rng: &mut RngStream,
) -> Result<JointStationaryPair> {
    if !(0.0 < lambda && lambda < rho && rho < sigma) {
        return domain(format!("need 0 < lambda < rho < sigma, got {lambda}, {rho}, {sigma}"));
    }
    if rect.lo != o {
        return geometry(format!("rectangle {rect} must start at {o}"));
    }
    let (m, n) = (rect.width() - 1, rect.height() - 1);
    let depth = adaptive_depth(lambda, rho, JOINT_TOL)?
        .max(adaptive_depth(lambda, sigma, JOINT_TOL)?)
        .max(adaptive_depth(rho, sigma, JOINT_TOL)?);
    let lo = -(depth as i64) + 1;
    let len = depth + n;

    let mut ys = rng.derive(10);
    let mut yl = rng.derive(11);
    let mut s0 = rng.derive(12);
    let mut su = rng.derive(13);
    let mut sy = rng.derive(14);
    let y_rho: Vec<f64> = (0..len).map(|_| sample_log_inverse_gamma(rho, &mut ys)).collect::<Result<_>>()?;
    let y_lambda: Vec<f64> = (0..len).map(|_| sample_log_inverse_gamma(lambda, &mut yl)).collect::<Result<_>>()?;
    let column_rho = RatioSeq::from_logs(lo, y_rho, RatioKind::J, rho)?;
    let y_lambda = RatioSeq::from_logs(lo, y_lambda, RatioKind::I, lambda)?;
    let seed0 = sample_log_inverse_gamma(rho - lambda, &mut s0)?;
    let mut column_lambda = half_line_logs(&y_lambda, &column_rho, seed0).i_tilde;
    column_lambda.kind = RatioKind::J;

    let mut i_rho = Vec::with_capacity(m);
    let mut i_lambda = Vec::with_capacity(m);
    if m > 0 {
        let mut cur_rho = column_rho.window(lo, 0)?;
        let mut cur_lambda = column_lambda.window(lo, 0)?;
        for _ in 0..m {
            let ylogs = (0..depth).map(|_| sample_log_inverse_gamma(sigma, &mut sy)).collect::<Result<_>>()?;
            let y = RatioSeq::from_logs(lo, ylogs, RatioKind::Y, sigma)?;
            let u = su.next_f64();
            let seed_rho = inv_gamma_quantile(sigma - rho, u)?.ln();
            let seed_lambda = inv_gamma_quantile(sigma - lambda, u)?.ln().min(seed_rho);
            let out_rho = half_line_logs(&cur_rho, &y, seed_rho);
            let out_lambda = half_line_logs(&cur_lambda, &y, seed_lambda);
            i_rho.push(out_rho.j.log_at(0));
            i_lambda.push(out_lambda.j.log_at(0));
            cur_rho = out_rho.i_tilde;
            cur_lambda = out_lambda.i_tilde;
        }
    }

    let upper_b = BoundaryWeights {
        base: o,
        horizontal: RatioSeq::from_logs_allow_empty(1, i_rho, RatioKind::I, sigma - rho),
        vertical: RatioSeq::from_logs_allow_empty(1, column_rho.logs()[depth..].to_vec(), RatioKind::J, rho),
    };
    let lower_b = BoundaryWeights {
        base: o,
        horizontal: RatioSeq::from_logs_allow_empty(1, i_lambda, RatioKind::I, sigma - lambda),
        vertical: RatioSeq::from_logs_allow_empty(1, column_lambda.logs()[depth..].to_vec(), RatioKind::J, lambda),
    };
    let eta_h = lower_b
        .horizontal
        .logs()
        .iter()
        .map(|&l| Ok(monotone_recouple(l.exp(), sigma - lambda, sigma)?.ln().min(l)))
        .collect::<Result<Vec<_>>>()?;
    let eta_v = upper_b
        .vertical
        .logs()
        .iter()
        .map(|&l| Ok(monotone_recouple(l.exp(), rho, sigma)?.ln().min(l)))
        .collect::<Result<Vec<_>>>()?;
    let eta = BoundaryWeights {
        base: o,
        horizontal: RatioSeq::from_logs_allow_empty(1, eta_h, RatioKind::Y, sigma),
        vertical: RatioSeq::from_logs_allow_empty(1, eta_v, RatioKind::Y, sigma),
    };
    let lower = StationaryQuadrant::from_boundary(lower_b, lambda, sigma, rect, bulk)?;
    let upper = StationaryQuadrant::from_boundary(upper_b, rho, sigma, rect, bulk)?;
    Ok(JointStationaryPair { lambda, rho, sigma, depth, lower, upper, eta, column_rho, column_lambda })
}
