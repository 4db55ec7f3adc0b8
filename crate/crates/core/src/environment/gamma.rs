//! Gamma and inverse-gamma sampling, the inverse-gamma CDF, its quantile, and
//! the monotone CDF recoupling between inverse-gamma laws.

use super::rng::RngStream;
use crate::error::{domain, Error, Result};
use crate::numerics::{ln_gamma, ln_regularized_gamma};

fn check_shape(theta: f64) -> Result<()> {
    if !(theta > 0.0) || !theta.is_finite() {
        return domain(format!("gamma shape must be positive and finite, got {theta}"));
    }
    Ok(())
}

/// Standard normal by Box–Muller (one output per pair of uniforms).
pub fn sample_normal(rng: &mut RngStream) -> f64 {
    let u1 = rng.next_f64();
    let u2 = rng.next_f64();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Marsaglia–Tsang for shape ≥ 1.
fn marsaglia_tsang(theta: f64, rng: &mut RngStream) -> f64 {
    let d = theta - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x = sample_normal(rng);
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u = rng.next_f64();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// `(base, log_boost)` with `G = base · e^{log_boost}`; the boost is nonzero
/// only for θ < 1 (`G(θ+1)·U^{1/θ}`).
fn gamma_parts(theta: f64, rng: &mut RngStream) -> (f64, f64) {
    if theta == 1.0 {
        (-rng.next_f64().ln(), 0.0)
    } else if theta < 1.0 {
        let base = marsaglia_tsang(theta + 1.0, rng);
        (base, rng.next_f64().ln() / theta)
    } else {
        (marsaglia_tsang(theta, rng), 0.0)
    }
}

pub fn sample_gamma(theta: f64, rng: &mut RngStream) -> Result<f64> {
    check_shape(theta)?;
    let (base, boost) = gamma_parts(theta, rng);
    Ok(if boost == 0.0 { base } else { base * boost.exp() })
}

/// `ln G` for `G ~ Ga(θ)`; safe for small θ where `G` underflows.
pub fn sample_log_gamma(theta: f64, rng: &mut RngStream) -> Result<f64> {
    check_shape(theta)?;
    let (base, boost) = gamma_parts(theta, rng);
    Ok(base.ln() + boost)
}

pub fn sample_inverse_gamma(theta: f64, rng: &mut RngStream) -> Result<f64> {
    Ok(1.0 / sample_gamma(theta, rng)?)
}

pub fn sample_log_inverse_gamma(theta: f64, rng: &mut RngStream) -> Result<f64> {
    Ok(-sample_log_gamma(theta, rng)?)
}

/// `F_θ(x) = Q(θ, 1/x)`, the c.d.f. of `Ga⁻¹(θ)`.
pub fn inv_gamma_cdf(theta: f64, x: f64) -> Result<f64> {
    Ok(inv_gamma_cdf_ln_pair(theta, x)?.0.exp())
}

/// `(ln F_θ(x), ln(1 − F_θ(x)))`.
pub fn inv_gamma_cdf_ln_pair(theta: f64, x: f64) -> Result<(f64, f64)> {
    check_shape(theta)?;
    if !(x >= 0.0) {
        return domain(format!("inverse-gamma cdf needs x >= 0, got {x}"));
    }
    if x == 0.0 {
        return Ok((f64::NEG_INFINITY, 0.0));
    }
    let (lp, lq) = ln_regularized_gamma(theta, 1.0 / x)?;
    Ok((lq, lp))
}

pub fn inv_gamma_quantile(theta: f64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return domain(format!("quantile level {p} outside (0,1)"));
    }
    quantile_from_ln_pair(theta, p.ln(), (-p).ln_1p())
}

/// Solve `F_θ(x) = F` given `(ln F, ln(1−F))`, working in `u = ln(1/x)`.
///
/// The smaller tail is matched so extreme levels keep relative accuracy.
/// Bracketed Newton, falling back to bisection when a step leaves the bracket.
fn quantile_from_ln_pair(theta: f64, lf: f64, lfc: f64) -> Result<f64> {
    check_shape(theta)?;
    if !(lf.is_finite() && lfc.is_finite()) {
        return Err(Error::Convergence(format!(
            "quantile level degenerate: ln F = {lf}, ln(1-F) = {lfc}"
        )));
    }
    let lgam = ln_gamma(theta)?;
    let use_lower = lf <= lfc;
    // residual increasing in u in both branches
    let resid = |u: f64| -> Result<(f64, f64)> {
        let t = u.exp();
        let (lp, lq) = ln_regularized_gamma(theta, t)?;
        let log_dens = theta * u - t - lgam;
        if use_lower {
            // F = Q(θ,t) decreasing in t
            Ok((lf - lq, (log_dens - lq).exp()))
        } else {
            Ok((lp - lfc, (log_dens - lp).exp()))
        }
    };
    let mut u = theta.max(1e-3).ln();
    let (r0, _) = resid(u)?;
    let mut step = 1.0;
    let (mut lo, mut hi);
    if r0 < 0.0 {
        lo = u;
        hi = u + step;
        while resid(hi)?.0 < 0.0 {
            lo = hi;
            step *= 2.0;
            hi += step;
            if hi > 800.0 {
                return Err(Error::Convergence(format!("no upper bracket (theta={theta}, lnF={lf})")));
            }
        }
    } else {
        hi = u;
        lo = u - step;
        while resid(lo)?.0 > 0.0 {
            hi = lo;
            step *= 2.0;
            lo -= step;
            if lo < -800.0 {
                return Err(Error::Convergence(format!("no lower bracket (theta={theta}, lnF={lf})")));
            }
        }
    }
    u = 0.5 * (lo + hi);
    for _ in 0..300 {
        let (r, dr) = resid(u)?;
        if r == 0.0 {
            return Ok((-u).exp());
        }
        if r < 0.0 {
            lo = u;
        } else {
            hi = u;
        }
        let mut next = u - r / dr;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - u).abs() <= 4.0 * f64::EPSILON * u.abs().max(1.0) || hi - lo <= 4.0 * f64::EPSILON * u.abs().max(1.0) {
            return Ok((-next).exp());
        }
        u = next;
    }
    Err(Error::Convergence(format!(
        "quantile did not converge (theta={theta}, lnF={lf}, bracket=[{lo}, {hi}])"
    )))
}

/// `F_{θto}⁻¹(F_{θfrom}(x))`.
pub fn monotone_recouple(x: f64, theta_from: f64, theta_to: f64) -> Result<f64> {
    check_shape(theta_from)?;
    check_shape(theta_to)?;
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("recoupling needs a positive finite input, got {x}"));
    }
    if theta_from == theta_to {
        return Ok(x);
    }
    let (lf, lfc) = inv_gamma_cdf_ln_pair(theta_from, x)?;
    quantile_from_ln_pair(theta_to, lf, lfc)
}
