use super::half_line::half_line_boundary;
use super::sequence::RatioSeq;
use crate::error::Result;
use crate::numerics::lse;

/// Largest log discrepancy between the two sides of
/// `D(D(A, I), Y) = D(D(A, R(I, Y)), D(I, Y))` on the common window.
///
/// Both sides are compared through the accumulated sums they produce from
/// the same `A`-level partial products `B_k = Π_{m₀ ≤ i ≤ k} A_i`:
/// `H_m = Σ_{k ≤ ℓ ≤ m} B_k (Π_{i=k}^{ℓ} I_i)(Π_{j=ℓ}^{m} Y_j)`, built once
/// with `(I, Y)` and once with `(Ỹ, Ĩ)` in their places. Only the half-line step `(I, Y) ↦ (Ĩ, Ỹ)` needs a
/// seed, `j_seed`.
pub fn dd_identity_residual(a: &RatioSeq, i: &RatioSeq, y: &RatioSeq, j_seed: f64) -> Result<f64> {
    a.check_aligned(i)?;
    i.check_aligned(y)?;
    let out = half_line_boundary(i, y, j_seed)?;
    let (it, yt) = (out.i_tilde.logs(), out.y_tilde.logs());
    let (il, yl) = (i.logs(), y.logs());
    let mut b = 0.0;
    let (mut bl, mut hl) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let (mut br, mut hr) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut worst: f64 = 0.0;
    for (k, &la) in a.logs().iter().enumerate() {
        b += la;
        bl = il[k] + lse(b, bl);
        hl = yl[k] + lse(bl, hl);
        br = yt[k] + lse(b, br);
        hr = it[k] + lse(br, hr);
        worst = worst.max((hl - hr).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::{sample_log_inverse_gamma, RngStream};
    use crate::stationary::RatioKind;

    #[test]
    fn constant_and_single_site() {
        let c = |v: f64, k| RatioSeq::from_values(-9, &[v; 10], k, 0.5).unwrap();
        let r = dd_identity_residual(&c(1.5, RatioKind::I), &c(2.0, RatioKind::I), &c(1.0, RatioKind::Y), 2.0).unwrap();
        assert!(r < 1e-13);
        let one = |v: f64| RatioSeq::from_values(0, &[v], RatioKind::I, 0.5).unwrap();
        let r = dd_identity_residual(&one(0.7), &one(3.0), &one(1.3), 0.4).unwrap();
        assert!(r < 1e-14);
    }

    #[test]
    fn random_windows() {
        let mut g = RngStream::new(12, 0);
        for _ in 0..100 {
            let mut draw = |t: f64, k| {
                let logs = (0..30).map(|_| sample_log_inverse_gamma(t, &mut g).unwrap()).collect();
                RatioSeq::from_logs(-29, logs, k, t).unwrap()
            };
            let a = draw(0.2, RatioKind::I);
            let i = draw(0.4, RatioKind::I);
            let y = draw(1.0, RatioKind::Y);
            let s = sample_log_inverse_gamma(0.6, &mut g).unwrap().exp();
            assert!(dd_identity_residual(&a, &i, &y, s).unwrap() < 1e-9);
        }
    }

    #[test]
    fn detects_a_broken_step() {
        let mut g = RngStream::new(13, 0);
        let mut draw = |t: f64| {
            let logs = (0..8).map(|_| sample_log_inverse_gamma(t, &mut g).unwrap()).collect();
            RatioSeq::from_logs(0, logs, RatioKind::I, t).unwrap()
        };
        let (a, i, y) = (draw(0.3), draw(0.4), draw(1.0));
        let base = dd_identity_residual(&a, &i, &y, 1.0).unwrap();
        let short = RatioSeq::from_logs(1, a.logs()[1..].to_vec(), RatioKind::I, 0.3).unwrap();
        assert!(base < 1e-9);
        assert!(dd_identity_residual(&short, &i, &y, 1.0).is_err());
    }
}
