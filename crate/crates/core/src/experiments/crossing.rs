//! Largest crossing probability of the edge `(0,0) → (1,0)` over paths
//! between opposite corners of `⟦−N, N⟧²`.

use std::collections::BTreeMap;

use super::config::ExperimentConfig;
use super::report::{ExperimentReport, ReplicaTable, SizeStats, Verdict};
use super::runner::{replica_stream, run_replicas};
use super::stats::mean_se;
use super::verdicts::non_increasing_within;
use crate::environment::{make_bulk_field, WeightField};
use crate::error::{domain, geometry, Result};
use crate::lattice::{Rect, Vertex, E1};
use crate::polymer::{log_partition_forward, Convention};

pub const CROSSING_DECAY: &str = "crossing-decay";

pub fn crossing_default_config() -> ExperimentConfig {
    ExperimentConfig::new(CROSSING_DECAY, vec![32, 64, 128, 256], 500, 1)
        .with_param("sigma", 1.0)
        .with_param("eps", 0.5)
        .with_param("delta", 0.1)
}

/// Southwest boundary points with a coordinate at most `−⌈εN⌉`, listed from
/// the top of the west side around the corner to the right end of the south side.
pub fn southwest_boundary(n: i64, eps: f64) -> Vec<Vertex> {
    let top = -(eps * n as f64).ceil() as i64;
    (-n..=top)
        .rev()
        .map(|y| Vertex::new(-n, y))
        .chain((-n + 1..=top).map(|x| Vertex::new(x, -n)))
        .collect()
}

/// The reflection of [`southwest_boundary`] through the origin.
pub fn northeast_boundary(n: i64, eps: f64) -> Vec<Vertex> {
    southwest_boundary(n, eps).into_iter().map(|u| Vertex::new(-u.x, -u.y)).collect()
}

/// Every `step`-th boundary point, plus the last one.
pub fn coarse_grid(points: &[Vertex], step: usize) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = points.iter().step_by(step.max(1)).copied().collect();
    if let Some(&last) = points.last() {
        if out.last() != Some(&last) {
            out.push(last);
        }
    }
    out
}

/// `max p₀^{u,v}` over `u ∈ us`, `v ∈ vs`, with
/// `p₀^{u,v} = Z_{u,0} Z_{e₁,v} / Z_{u,v}`. Returns the maximum and a maximizer.
pub fn sup_crossing_probability(field: &WeightField, us: &[Vertex], vs: &[Vertex]) -> Result<(f64, Vertex, Vertex)> {
    if us.is_empty() || vs.is_empty() {
        return domain("need at least one pair");
    }
    if us.iter().any(|u| u.x > -1 || u.y > 0) || vs.iter().any(|v| v.x < 1 || v.y < 0) {
        return geometry("pairs must straddle the edge from the origin to e1");
    }
    let from_e1 = log_partition_forward(field, E1, Convention::WithBaseWeight)?;
    let origin = Vertex::new(0, 0);
    let mut best = (f64::NEG_INFINITY, us[0], vs[0]);
    for &u in us {
        let g = log_partition_forward(field, u, Convention::WithBaseWeight)?;
        let z0 = g.logz(origin);
        for &v in vs {
            let lp = z0 + from_e1.logz(v) - g.logz(v);
            if lp > best.0 {
                best = (lp, u, v);
            }
        }
    }
    Ok((best.0.exp().min(1.0), best.1, best.2))
}

pub fn run_crossing_decay(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    cfg.require_sizes_in(2, 256)?;
    let eps = cfg.require_open("eps", 0.5, 0.0, 1.0)?;
    let sigma = cfg.require_open("sigma", 1.0, 0.0, f64::INFINITY)?;
    let delta = cfg.require_open("delta", 0.1, 0.0, f64::INFINITY)?;
    let mut rep = ExperimentReport::new(CROSSING_DECAY, cfg);
    rep.calibration = BTreeMap::from([("monotone_se".to_string(), 2.0)]);
    rep.replicas = ReplicaTable::new(&["sup_p0"]);
    let (mut means, mut ses) = (Vec::new(), Vec::new());
    let mut above_one = 0usize;
    for &n in &cfg.sizes {
        let step = ((n as f64).powf(2.0 / 3.0) * (1.0 + 1e-12)).floor() as usize;
        let us = coarse_grid(&southwest_boundary(n, eps), step);
        let vs = northeast_boundary(n, eps);
        let sups = run_replicas(cfg.threads, cfg.replicas, |r| {
            let mut rng = replica_stream(cfg.seed, CROSSING_DECAY, n, r);
            let field = make_bulk_field(Rect::from_coords(-n, -n, n, n)?, sigma, rng.next_u64())?;
            Ok(sup_crossing_probability(&field, &us, &vs)?.0)
        })?;
        let (m, se) = mean_se(&sups);
        above_one += sups.iter().filter(|&&p| p > 1.0).count();
        let frac = sups.iter().filter(|&&p| p > delta).count() as f64 / sups.len() as f64;
        means.push(m);
        ses.push(se);
        rep.sizes.push(SizeStats {
            n,
            stats: BTreeMap::from([
                ("mean_sup_p0".to_string(), m),
                ("mean_sup_p0_se".to_string(), se),
                ("frac_above_delta".to_string(), frac),
                ("coarse_points".to_string(), us.len() as f64),
                ("targets".to_string(), vs.len() as f64),
            ]),
        });
        for (r, p) in sups.into_iter().enumerate() {
            rep.replicas.push(n, r, vec![p]);
        }
    }
    let bad = non_increasing_within(&means, &ses, 2.0);
    rep.verdicts.push(Verdict::new(
        "mean sup crossing probability non-increasing",
        bad.is_empty(),
        format!("means {means:?}, offending steps {bad:?}"),
    ));
    rep.verdicts.push(Verdict::new("probabilities at most one", above_one == 0, format!("{above_one} above one")));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: i64, k: i64) -> f64 {
        if k < 0 || k > n {
            return 0.0;
        }
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    fn paths(a: Vertex, b: Vertex) -> f64 {
        let d = b - a;
        binom(d.x + d.y, d.x)
    }

    #[test]
    fn unit_field_matches_path_counts() {
        let n = 8;
        let f = WeightField::unit(Rect::from_coords(-n, -n, n, n).unwrap());
        let us = southwest_boundary(n, 0.5);
        let vs = northeast_boundary(n, 0.5);
        assert_eq!(us.len(), 9);
        assert_eq!(us[0], Vertex::new(-8, -4));
        let (sup, _, _) = sup_crossing_probability(&f, &us, &vs).unwrap();
        let mut want: f64 = 0.0;
        for &u in &us {
            for &v in &vs {
                want = want.max(paths(u, Vertex::new(0, 0)) * paths(E1, v) / paths(u, v));
            }
        }
        assert!((sup - want).abs() < 1e-12 * want, "{sup} vs {want}");
    }

    #[test]
    fn coarse_grid_keeps_ends() {
        let pts = southwest_boundary(27, 0.5);
        let c = coarse_grid(&pts, 9);
        assert_eq!(c[0], pts[0]);
        assert_eq!(*c.last().unwrap(), *pts.last().unwrap());
        assert!(c.len() <= pts.len() / 9 + 2);
    }

    #[test]
    fn small_run_respects_trivial_bounds() {
        let mut cfg = crossing_default_config();
        cfg.sizes = vec![8, 16];
        cfg.replicas = 40;
        cfg.params.insert("delta".into(), 1.0);
        let r = run_crossing_decay(&cfg).unwrap();
        for s in &r.sizes {
            assert_eq!(s.stats["frac_above_delta"], 0.0);
        }
        assert!(r.verdict("probabilities at most one").unwrap().passed);
        cfg.sizes = vec![512];
        assert!(run_crossing_decay(&cfg).is_err());
    }
}
