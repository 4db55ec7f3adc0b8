//! Seeded half-line construction of the D/S/R outputs.

use super::involution::theta_log;
use super::sequence::{RatioKind, RatioSeq};
use crate::error::{domain, Error, Result};
use crate::numerics::{digamma, trigamma};

/// Upper limit returned by [`adaptive_depth`] before it reports an error.
pub const MAX_DEPTH: usize = 2_000_000;

/// Outputs on the input window: `Ĩ = D(I,Y)`, `J` with `J_k = S(I,Y)_k`,
/// `Ỹ = R(I,Y)`, plus the seed `J_{start−1}` (as a log).
#[derive(Clone, Debug, PartialEq)]
pub struct HalfLineOutput {
    pub i_tilde: RatioSeq,
    pub j: RatioSeq,
    pub y_tilde: RatioSeq,
    pub seed_log: f64,
}

/// Iterate `(Ĩ_k, J_k, Ỹ_k) = Θ(I_k, J_{k−1}, Y_k)` left to right starting
/// from the seed `J_{start−1}`.
pub fn half_line_boundary(i: &RatioSeq, y: &RatioSeq, seed_j: f64) -> Result<HalfLineOutput> {
    i.check_aligned(y)?;
    if !(seed_j > 0.0) || !seed_j.is_finite() {
        return domain(format!("seed must be positive, got {seed_j}"));
    }
    Ok(half_line_logs(i, y, seed_j.ln()))
}

pub(crate) fn half_line_logs(i: &RatioSeq, y: &RatioSeq, seed_log: f64) -> HalfLineOutput {
    let n = i.len();
    let (mut it, mut jt, mut yt) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    let mut j = seed_log;
    for (&li, &ly) in i.logs().iter().zip(y.logs()) {
        let (a, b, c) = theta_log(li, j, ly);
        it.push(a);
        jt.push(b);
        yt.push(c);
        j = b;
    }
    let s = i.start();
    let (rho, sigma) = (i.param, y.param);
    HalfLineOutput {
        i_tilde: RatioSeq::from_logs_allow_empty(s, it, RatioKind::I, rho),
        j: RatioSeq::from_logs_allow_empty(s, jt, RatioKind::J, sigma - rho),
        y_tilde: RatioSeq::from_logs_allow_empty(s, yt, RatioKind::Y, sigma),
        seed_log,
    }
}

pub fn d_operator(i: &RatioSeq, y: &RatioSeq, seed_j: f64) -> Result<RatioSeq> {
    Ok(half_line_boundary(i, y, seed_j)?.i_tilde)
}

pub fn s_operator(i: &RatioSeq, y: &RatioSeq, seed_j: f64) -> Result<RatioSeq> {
    Ok(half_line_boundary(i, y, seed_j)?.j)
}

pub fn r_operator(i: &RatioSeq, y: &RatioSeq, seed_j: f64) -> Result<RatioSeq> {
    Ok(half_line_boundary(i, y, seed_j)?.y_tilde)
}

/// Depth `M` with `e^{−Mδ} · C < tol`, `δ = (ψ₀(σ) − ψ₀(ρ))/3`, where `C`
/// bounds the seed error `|J_{−M} − J*_{−M}|` at about six log-standard
/// deviations above the typical size of a `Ga⁻¹(σ−ρ)` variable.
pub fn adaptive_depth(rho: f64, sigma: f64, tol: f64) -> Result<usize> {
    if !(rho > 0.0 && rho < sigma) {
        return domain(format!("adaptive depth needs 0 < rho < sigma, got rho={rho}, sigma={sigma}"));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return domain(format!("tolerance {tol} outside (0,1)"));
    }
    let delta = (digamma(sigma)? - digamma(rho)?) / 3.0;
    let th = sigma - rho;
    let log_c = std::f64::consts::LN_2 - digamma(th)? + 6.0 * trigamma(th)?.sqrt();
    let m = ((log_c - tol.ln()) / delta).ceil().max(1.0);
    if !(m <= MAX_DEPTH as f64) {
        return Err(Error::Convergence(format!(
            "depth {m} exceeds {MAX_DEPTH} (rho={rho} too close to sigma={sigma})"
        )));
    }
    Ok(m as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::{sample_log_inverse_gamma, RngStream};
    use crate::stationary::apply_involution;

    fn seq(start: i64, logs: Vec<f64>, kind: RatioKind, p: f64) -> RatioSeq {
        RatioSeq::from_logs(start, logs, kind, p).unwrap()
    }

    fn random_pair(m: usize, rho: f64, sigma: f64, rng: &mut RngStream) -> (RatioSeq, RatioSeq) {
        let s = -(m as i64) + 1;
        let i = (0..m).map(|_| sample_log_inverse_gamma(rho, rng).unwrap()).collect();
        let y = (0..m).map(|_| sample_log_inverse_gamma(sigma, rng).unwrap()).collect();
        (seq(s, i, RatioKind::I, rho), seq(s, y, RatioKind::Y, sigma))
    }

    #[test]
    fn constant_fixed_point() {
        let m = 40;
        let i = seq(-39, vec![2f64.ln(); m], RatioKind::I, 0.5);
        let y = seq(-39, vec![0.0; m], RatioKind::Y, 1.0);
        let out = half_line_boundary(&i, &y, 2.0).unwrap();
        for k in -39..=0 {
            assert!((out.j.value_at(k) - 2.0).abs() < 1e-13);
            assert!((out.i_tilde.value_at(k) - 2.0).abs() < 1e-13);
            assert!((out.y_tilde.value_at(k) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn single_step_is_involution() {
        let i = RatioSeq::from_values(0, &[2.0], RatioKind::I, 0.5).unwrap();
        let y = RatioSeq::from_values(0, &[3.0], RatioKind::Y, 1.0).unwrap();
        let out = half_line_boundary(&i, &y, 1.0).unwrap();
        let (a, b, c) = apply_involution(2.0, 1.0, 3.0).unwrap();
        assert!((out.i_tilde.value_at(0) - a).abs() < 1e-13);
        assert!((out.j.value_at(0) - b).abs() < 1e-13);
        assert!((out.y_tilde.value_at(0) - c).abs() < 1e-13);
    }

    #[test]
    fn series_form_and_conservation() {
        let mut rng = RngStream::new(5, 5);
        let (i, y) = random_pair(30, 0.4, 1.0, &mut rng);
        let seed = 1.7;
        let out = half_line_boundary(&i, &y, seed).unwrap();
        for k in i.start()..=0 {
            // J_k = seed·Π_{i ≤ k} Y_i/I_i + Σ_{j ≤ k} Y_j Π_{i=j+1}^{k} Y_i/I_i
            let mut series = seed;
            for t in i.start()..=k {
                series = series * y.value_at(t) / i.value_at(t) + y.value_at(t);
            }
            let mut head = seed;
            for t in i.start()..=k {
                head *= y.value_at(t) / i.value_at(t);
            }
            let mut sum = 0.0;
            for jj in i.start()..=k {
                let mut prod = y.value_at(jj);
                for t in jj + 1..=k {
                    prod *= y.value_at(t) / i.value_at(t);
                }
                sum += prod;
            }
            let j = out.j.value_at(k);
            assert!(((head + sum) - j).abs() <= 1e-10 * j);
            assert!((series - j).abs() <= 1e-10 * j);
            let lhs = out.i_tilde.log_at(k) + out.y_tilde.log_at(k);
            assert!((lhs - i.log_at(k) - y.log_at(k)).abs() < 1e-12);
            let prev = if k == i.start() { seed.ln() } else { out.j.log_at(k - 1) };
            assert!((out.j.log_at(k) + out.y_tilde.log_at(k) - y.log_at(k) - prev).abs() < 1e-12);
        }
    }

    #[test]
    fn seed_sensitivity_is_multiplicative() {
        let mut rng = RngStream::new(6, 6);
        for _ in 0..50 {
            let (i, y) = random_pair(4, 0.3, 1.0, &mut rng);
            let a = half_line_boundary(&i, &y, 1.0).unwrap().j.value_at(0);
            let b = half_line_boundary(&i, &y, 3.0).unwrap().j.value_at(0);
            let prod: f64 = (i.start()..=0).map(|t| y.value_at(t) / i.value_at(t)).product();
            assert!(((b - a) - 2.0 * prod).abs() <= 1e-12 * b);
        }
    }

    #[test]
    fn depth_scaling() {
        let delta = (digamma(1.0).unwrap() - digamma(0.5).unwrap()) / 3.0;
        let m1 = adaptive_depth(0.5, 1.0, 1e-10).unwrap() as f64;
        let m2 = adaptive_depth(0.5, 1.0, 0.5e-10).unwrap() as f64;
        assert!((m2 - m1 - std::f64::consts::LN_2 / delta).abs() <= 1.0);
        assert!(adaptive_depth(0.9999999, 1.0, 1e-14).is_err());
        assert!(adaptive_depth(1.0, 1.0, 1e-3).is_err());
        assert!(adaptive_depth(0.95, 1.0, 1e-10).unwrap() > adaptive_depth(0.9, 1.0, 1e-10).unwrap());
    }

    #[test]
    fn deepening_does_not_move_j0() {
        let tol = 1e-10;
        let m = adaptive_depth(0.5, 1.0, tol).unwrap();
        let deep = m + m / 4;
        for t in 0..100 {
            let mut rng = RngStream::new(7, t);
            let (i, y) = random_pair(deep, 0.5, 1.0, &mut rng);
            let seed_deep = sample_log_inverse_gamma(0.5, &mut rng).unwrap().exp();
            let seed_short = sample_log_inverse_gamma(0.5, &mut rng).unwrap().exp();
            let j_deep = half_line_boundary(&i, &y, seed_deep).unwrap().j.value_at(0);
            let s = -(m as i64) + 1;
            let j_short = half_line_boundary(&i.window(s, 0).unwrap(), &y.window(s, 0).unwrap(), seed_short)
                .unwrap()
                .j
                .value_at(0);
            assert!(((j_deep - j_short) / j_deep).abs() < tol, "trial {t}");
        }
    }
}
