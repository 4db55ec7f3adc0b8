//! Distributional battery for the stationary constructions.

use std::collections::BTreeMap;

use super::config::ExperimentConfig;
use super::report::{ExperimentReport, ReplicaTable, SizeStats, TestRecord, Verdict};
use super::runner::{replica_stream, run_replicas};
use super::stats::{bonferroni, ks_test, permutation_independence_test, permutations_for};
use super::verdicts::test_passes;
use crate::environment::{
    inv_gamma_cdf, inv_gamma_quantile, make_bulk_field, sample_log_inverse_gamma, BoundaryWeights, RngStream,
};
use crate::error::Result;
use crate::lattice::{Rect, Vertex};
use crate::stationary::{
    adaptive_depth, build_joint_pair, half_line_boundary, theta_log, RatioKind, RatioSeq, StationaryQuadrant,
};

pub const BURKE: &str = "burke";

pub fn burke_default_config() -> ExperimentConfig {
    ExperimentConfig::new(BURKE, vec![6], 100_000, 1)
        .with_param("lambda", 0.3)
        .with_param("rho", 0.6)
        .with_param("sigma", 1.0)
        .with_param("alpha", 0.5)
        .with_param("perturb", 0.0)
        .with_param("power_perturb", 0.1)
        .with_param("level", 0.01)
}

#[derive(Clone, Copy)]
struct Params {
    lambda: f64,
    rho: f64,
    sigma: f64,
    alpha: f64,
    perturb: f64,
    power_perturb: f64,
    side: i64,
    depth: usize,
}

/// Everything one replica contributes to the battery.
struct Draw {
    theta_in_residual: f64,
    theta_out: [f64; 3],
    half: [f64; 3],
    half_i_block: Vec<f64>,
    half_y_block: Vec<f64>,
    joint: [f64; 6],
    joint_past: Vec<f64>,
    joint_future: Vec<f64>,
    ordering_ok: bool,
    dstep: [f64; 2],
    dstep_ordered: bool,
    quad: [f64; 4],
    power_j: f64,
}

const BLOCK: i64 = 5;

fn draw(p: &Params, rng: &RngStream) -> Result<Draw> {
    let (lambda, rho, sigma, alpha) = (p.lambda, p.rho, p.sigma, p.alpha);

    let mut g = rng.derive(1);
    let li = sample_log_inverse_gamma(rho, &mut g)?;
    let lj = sample_log_inverse_gamma(sigma - rho + p.perturb, &mut g)?;
    let ly = sample_log_inverse_gamma(sigma, &mut g)?;
    let (ti, tj, ty) = theta_log(li, lj, ly);
    let (x, y, z) = theta_log(ti, tj, ty);
    let theta_in_residual = (x - li).abs().max((y - lj).abs()).max((z - ly).abs());

    let mut g = rng.derive(2);
    let m = p.depth;
    let start = -(m as i64) + 1;
    let is = (0..m).map(|_| sample_log_inverse_gamma(rho, &mut g)).collect::<Result<Vec<_>>>()?;
    let ys = (0..m).map(|_| sample_log_inverse_gamma(sigma, &mut g)).collect::<Result<Vec<_>>>()?;
    let seed = sample_log_inverse_gamma(sigma - rho + p.perturb, &mut g)?.exp();
    let out = half_line_boundary(
        &RatioSeq::from_logs(start, is, RatioKind::I, rho)?,
        &RatioSeq::from_logs(start, ys, RatioKind::Y, sigma)?,
        seed,
    )?;
    let half = [out.i_tilde.value_at(0), out.j.value_at(0), out.y_tilde.value_at(0)];
    let half_i_block = (1 - BLOCK..=0).map(|k| out.i_tilde.log_at(k)).collect();
    let half_y_block = (1 - BLOCK..=0).map(|k| out.y_tilde.log_at(k)).collect();

    let mut g = rng.derive(3);
    let rect = Rect::from_coords(0, 0, 2, p.side)?;
    let bulk = make_bulk_field(rect, sigma, g.next_u64())?;
    let pair = build_joint_pair(rect.lo, lambda, rho, sigma, rect, &bulk, &mut g)?;
    let (lo, up, eta) = (pair.lower().boundary(), pair.upper().boundary(), pair.eta());
    let joint = [
        lo.vertical.value_at(3),
        up.vertical.value_at(3),
        lo.horizontal.value_at(1),
        up.horizontal.value_at(2),
        eta.horizontal.value_at(2),
        eta.vertical.value_at(p.side),
    ];
    let (jr, jl) = pair.vertical_window();
    let joint_past = (1 - BLOCK..=0).map(|k| jl.log_at(k)).collect();
    let joint_future = (1..=BLOCK).map(|k| jr.log_at(k)).collect();

    let mut g = rng.derive(4);
    let ylogs = (0..jr.len()).map(|_| sample_log_inverse_gamma(sigma, &mut g)).collect::<Result<Vec<_>>>()?;
    let ycol = RatioSeq::from_logs(jr.start(), ylogs, RatioKind::Y, sigma)?;
    let u = g.next_f64();
    let sr = inv_gamma_quantile(sigma - rho, u)?;
    let sl = inv_gamma_quantile(sigma - lambda, u)?.min(sr);
    let dr = half_line_boundary(jr, &ycol, sr)?.i_tilde;
    let dl = half_line_boundary(jl, &ycol, sl)?.i_tilde;
    let dstep = [dr.value_at(3), dl.value_at(3)];
    let dstep_ordered = (dr.start()..=dr.end()).all(|k| dr.log_at(k) <= dl.log_at(k));

    let quadrant = |theta_v: f64, g: &mut RngStream| -> Result<StationaryQuadrant> {
        let rect = Rect::from_coords(0, 0, p.side, p.side)?;
        let bulk = make_bulk_field(rect, sigma, g.next_u64())?;
        let b = BoundaryWeights::sample_with(rect.lo, sigma - alpha, theta_v, p.side as usize, p.side as usize, g)?;
        StationaryQuadrant::from_boundary(b, alpha, sigma, rect, &bulk)
    };
    let q = quadrant(alpha + p.perturb, &mut rng.derive(5))?;
    let c = p.side - 1;
    let v = Vertex::new(c / 2 + 1, c / 2 + 1);
    let quad = [
        q.log_j(Vertex::new(c, 3)).exp(),
        q.log_i(Vertex::new(3, c)).exp(),
        q.log_i(v + Vertex::new(1, 0)),
        q.log_j(v + Vertex::new(0, 1)),
    ];
    let power_j = quadrant(alpha + p.power_perturb, &mut rng.derive(6))?.log_j(Vertex::new(c, 3)).exp();

    Ok(Draw {
        theta_in_residual,
        theta_out: [ti.exp(), tj.exp(), ty.exp()],
        half,
        half_i_block,
        half_y_block,
        joint,
        joint_past,
        joint_future,
        ordering_ok: pair.ordering_holds(),
        dstep,
        dstep_ordered,
        quad,
        power_j,
    })
}

enum Check {
    Ks(Vec<f64>, f64),
    Indep(Vec<Vec<f64>>, Vec<Vec<f64>>),
}

pub fn run_burke_suite(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    cfg.require_sizes_in(4, 40)?;
    let sigma = cfg.require_open("sigma", 1.0, 0.0, f64::INFINITY)?;
    let rho = cfg.require_open("rho", 0.6, 0.0, sigma)?;
    let lambda = cfg.require_open("lambda", 0.3, 0.0, rho)?;
    let alpha = cfg.require_open("alpha", 0.5, 0.0, sigma)?;
    let perturb = cfg.param("perturb", 0.0);
    let power_perturb = cfg.param("power_perturb", 0.1);
    let level = cfg.require_open("level", 0.01, 0.0, 1.0)?;
    let p = Params {
        lambda,
        rho,
        sigma,
        alpha,
        perturb,
        power_perturb,
        side: cfg.sizes[0],
        depth: adaptive_depth(rho, sigma, 1e-10)?,
    };
    let draws = run_replicas(cfg.threads, cfg.replicas, |r| draw(&p, &replica_stream(cfg.seed, BURKE, 0, r)))?;

    let col = |f: &dyn Fn(&Draw) -> f64| draws.iter().map(f).collect::<Vec<f64>>();
    let single = |f: &dyn Fn(&Draw) -> f64| draws.iter().map(|d| vec![f(d)]).collect::<Vec<Vec<f64>>>();
    let blocks = |f: &dyn Fn(&Draw) -> &Vec<f64>| draws.iter().map(|d| f(d).clone()).collect::<Vec<Vec<f64>>>();
    let (s, r) = (sigma, rho);
    let checks: Vec<(&str, Check)> = vec![
        ("involution output I law", Check::Ks(col(&|d| d.theta_out[0]), r)),
        ("involution output J law", Check::Ks(col(&|d| d.theta_out[1]), s - r)),
        ("involution output Y law", Check::Ks(col(&|d| d.theta_out[2]), s)),
        ("involution outputs I, J independent", Check::Indep(single(&|d| d.theta_out[0]), single(&|d| d.theta_out[1]))),
        ("involution outputs J, Y independent", Check::Indep(single(&|d| d.theta_out[1]), single(&|d| d.theta_out[2]))),
        ("involution outputs I, Y independent", Check::Indep(single(&|d| d.theta_out[0]), single(&|d| d.theta_out[2]))),
        ("half-line output I law", Check::Ks(col(&|d| d.half[0]), r)),
        ("half-line output J law", Check::Ks(col(&|d| d.half[1]), s - r)),
        ("half-line output Y law", Check::Ks(col(&|d| d.half[2]), s)),
        ("half-line past I independent of J", Check::Indep(blocks(&|d| &d.half_i_block), single(&|d| d.half[1]))),
        ("half-line past Y independent of J", Check::Indep(blocks(&|d| &d.half_y_block), single(&|d| d.half[1]))),
        ("half-line past I independent of past Y", Check::Indep(blocks(&|d| &d.half_i_block), blocks(&|d| &d.half_y_block))),
        ("joint vertical lambda law", Check::Ks(col(&|d| d.joint[0]), lambda)),
        ("joint vertical rho law", Check::Ks(col(&|d| d.joint[1]), r)),
        ("joint horizontal lambda law", Check::Ks(col(&|d| d.joint[2]), s - lambda)),
        ("joint horizontal rho law", Check::Ks(col(&|d| d.joint[3]), s - r)),
        ("joint lower boundary horizontal law", Check::Ks(col(&|d| d.joint[4]), s)),
        ("joint lower boundary vertical law", Check::Ks(col(&|d| d.joint[5]), s)),
        ("joint past independent of future", Check::Indep(blocks(&|d| &d.joint_past), blocks(&|d| &d.joint_future))),
        ("D-step rho law", Check::Ks(col(&|d| d.dstep[0]), r)),
        ("D-step lambda law", Check::Ks(col(&|d| d.dstep[1]), lambda)),
        ("quadrant J marginal", Check::Ks(col(&|d| d.quad[0]), alpha)),
        ("quadrant I marginal", Check::Ks(col(&|d| d.quad[1]), s - alpha)),
        ("quadrant down-right independence", Check::Indep(single(&|d| d.quad[2]), single(&|d| d.quad[3]))),
    ];
    let m = checks.len() + 1;
    let per_test = bonferroni(level, m);
    let perms = permutations_for(per_test);

    let mut rep = ExperimentReport::new(BURKE, cfg);
    rep.calibration = BTreeMap::from([
        ("family_level".to_string(), level),
        ("per_test_level".to_string(), per_test),
        ("permutations".to_string(), perms as f64),
        ("depth".to_string(), p.depth as f64),
    ]);
    for (k, (name, check)) in checks.into_iter().enumerate() {
        let (stat, pv) = match check {
            Check::Ks(xs, theta) => ks_test(xs, |x| inv_gamma_cdf(theta, x).unwrap_or(f64::NAN))?,
            Check::Indep(a, b) => {
                let mut g = RngStream::new(cfg.seed, 0xB0_0000 + k as u64);
                let t = permutation_independence_test(&a, &b, perms, &mut g)?;
                (t.statistic, t.p_value)
            }
        };
        let passed = test_passes(pv, per_test);
        rep.tests.push(TestRecord { name: name.to_string(), statistic: stat, p_value: pv, level: per_test, passed });
        rep.verdicts.push(Verdict::new(name, passed, format!("statistic {stat:.5}, p = {pv:.4}")));
    }

    let (pstat, pp) = ks_test(col(&|d| d.power_j), |x| inv_gamma_cdf(alpha, x).unwrap_or(f64::NAN))?;
    let detected = !test_passes(pp, per_test);
    rep.tests.push(TestRecord {
        name: "power check: perturbed quadrant J marginal".to_string(),
        statistic: pstat,
        p_value: pp,
        level: per_test,
        passed: detected,
    });
    rep.verdicts.push(Verdict::new(
        "power check rejects perturbed boundary",
        detected,
        format!("J drawn with parameter alpha + {power_perturb}: p = {pp:.3e}"),
    ));

    let worst = draws.iter().map(|d| d.theta_in_residual).fold(0.0, f64::max);
    rep.verdicts.push(Verdict::new("involution residual", worst < 1e-12, format!("max log residual {worst:.2e}")));
    let bad_order = draws.iter().filter(|d| !d.ordering_ok).count();
    rep.verdicts.push(Verdict::new("joint boundary ordering", bad_order == 0, format!("{bad_order} violations")));
    let bad_step = draws.iter().filter(|d| !d.dstep_ordered).count();
    rep.verdicts.push(Verdict::new("D-step keeps the ordering", bad_step == 0, format!("{bad_step} violations")));
    rep.sizes.push(SizeStats {
        n: p.side,
        stats: BTreeMap::from([
            ("samples".to_string(), cfg.replicas as f64),
            ("max_involution_residual".to_string(), worst),
            ("ordering_violations".to_string(), bad_order as f64),
            ("dstep_order_violations".to_string(), bad_step as f64),
        ]),
    });

    rep.replicas = ReplicaTable::new(&["theta_i", "theta_j", "theta_y", "half_i", "half_j", "half_y", "quad_j", "quad_i"]);
    for (r, d) in draws.iter().enumerate() {
        let row = vec![d.theta_out[0], d.theta_out[1], d.theta_out[2], d.half[0], d.half[1], d.half[2], d.quad[0], d.quad[1]];
        rep.replicas.push(p.side, r, row);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_battery_passes_and_detects_perturbation() {
        let mut cfg = burke_default_config();
        cfg.replicas = 5000;
        cfg.params.insert("power_perturb".into(), 0.4);
        let r = run_burke_suite(&cfg).unwrap();
        assert!(r.passed(), "{:#?}", r.verdicts.iter().filter(|v| !v.passed).collect::<Vec<_>>());
        assert_eq!(r.tests.len(), 25);

        cfg.params.insert("perturb".into(), 0.4);
        let r = run_burke_suite(&cfg).unwrap();
        assert!(!r.verdict("quadrant J marginal").unwrap().passed);
        assert!(!r.verdict("involution output J law").unwrap().passed);
    }
}
