//! Transversal fluctuations of point-to-point paths and exit points of the
//! stationary polymer.

use std::collections::BTreeMap;

use super::config::ExperimentConfig;
use super::report::{ExperimentReport, FitRecord, ReplicaTable, SizeStats, Verdict};
use super::runner::{replica_stream, run_replicas};
use super::stats::{fit_power_law, mean_se, median, quantile};
use super::verdicts::{at_most, exponent_in_window, within_se};
use crate::environment::{make_bulk_field, WeightField};
use crate::error::{geometry, Result};
use crate::lattice::{Rect, Vertex};
use crate::numerics::{characteristic_direction, ParamRho};
use crate::polymer::{
    exit_distribution_exact, log_partition_backward, log_partition_forward, sample_path, Convention, LogZGrid,
};
use crate::stationary::build_stationary_quadrant;

pub const KPZ_WANDERING: &str = "kpz-wandering";
pub const EXIT_TAIL: &str = "exit-tail";

/// Segment half-widths `b·N^{2/3}` are evaluated for these `b`.
pub const MISS_B: [f64; 4] = [1.0, 2.0, 3.0, 4.0];
pub const EXIT_B: [f64; 3] = [1.0, 2.0, 3.0];

pub fn kpz_default_config() -> ExperimentConfig {
    ExperimentConfig::new(KPZ_WANDERING, vec![64, 128, 256, 512, 1024], 2000, 1)
        .with_param("sigma", 1.0)
        .with_param("miss_size", 512.0)
        .with_param("exponent_lo", 0.55)
        .with_param("exponent_hi", 0.78)
        .with_param("decay_max", -2.0)
}

pub fn exit_default_config() -> ExperimentConfig {
    ExperimentConfig::new(EXIT_TAIL, vec![512], 2000, 1)
        .with_param("alpha", 0.5)
        .with_param("decay_max", -2.0)
}

/// Exact quenched probability that the path from `fwd.base()` to `v` avoids
/// the vertical segment `{c} × [r − w, r + w]` for each half-width `w`.
pub fn segment_miss_probs(field: &WeightField, fwd: &LogZGrid, v: Vertex, c: i64, r: i64, widths: &[i64]) -> Result<Vec<f64>> {
    let o = fwd.base();
    if !(o.x < c && c < v.x) || !fwd.rect().contains(v) {
        return geometry(format!("column {c} must lie strictly between {o} and {v}"));
    }
    let back = log_partition_backward(field, v, Convention::WithBaseWeight)?;
    let total = fwd.logz(v);
    // Last row in column c (leaving to the right) and first row (entering from the left).
    let leave: Vec<f64> = (o.y..=v.y)
        .map(|i| (fwd.logz(Vertex::new(c, i)) + back.logz(Vertex::new(c + 1, i)) - total).exp())
        .collect();
    let enter: Vec<f64> = (o.y..=v.y)
        .map(|i| (fwd.logz(Vertex::new(c - 1, i)) + back.logz(Vertex::new(c, i)) - total).exp())
        .collect();
    Ok(widths
        .iter()
        .map(|&w| {
            let (lo, hi) = (r - w, r + w);
            let below: f64 = (o.y..lo.min(v.y + 1)).map(|i| leave[(i - o.y) as usize]).sum();
            let above: f64 = ((hi + 1).max(o.y)..=v.y).map(|i| enter[(i - o.y) as usize]).sum();
            (below + above).min(1.0)
        })
        .collect())
}

fn two_thirds(n: i64) -> f64 {
    (n as f64).powf(2.0 / 3.0)
}

pub fn run_kpz_wandering(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    cfg.require_sizes_in(32, 2048)?;
    let sigma = cfg.require_open("sigma", 1.0, 0.0, f64::INFINITY)?;
    let miss_size = cfg.param("miss_size", 512.0) as i64;
    let (lo, hi) = (cfg.param("exponent_lo", 0.55), cfg.param("exponent_hi", 0.78));
    let decay_max = cfg.param("decay_max", -2.0);

    let mut rep = ExperimentReport::new(KPZ_WANDERING, cfg);
    rep.calibration = BTreeMap::from([
        ("exponent_lo".to_string(), lo),
        ("exponent_hi".to_string(), hi),
        ("decay_max".to_string(), decay_max),
    ]);
    let mut cols = vec!["deviation"];
    let miss_names: Vec<String> = MISS_B.iter().map(|b| format!("miss_b{b}")).collect();
    cols.extend(miss_names.iter().map(|s| s.as_str()));
    rep.replicas = ReplicaTable::new(&cols);

    let mut medians = Vec::new();
    let mut sanity = true;
    for &n in &cfg.sizes {
        let with_miss = n == miss_size;
        let widths: Vec<i64> = MISS_B.iter().map(|b| (b * two_thirds(n) * (1.0 + 1e-12)).floor() as i64).collect();
        let rows = run_replicas(cfg.threads, cfg.replicas, |r| {
            let mut rng = replica_stream(cfg.seed, KPZ_WANDERING, n, r);
            let rect = Rect::from_coords(0, 0, n, n)?;
            let field = make_bulk_field(rect, sigma, rng.next_u64())?;
            let grid = log_partition_forward(&field, rect.lo, Convention::WithBaseWeight)?;
            let path = sample_path(&grid, rect.hi, &mut rng)?;
            let mid = path.at_level(n).expect("path crosses every level");
            let dev = (mid.x as f64 - n as f64 / 2.0).abs();
            let miss = if with_miss {
                segment_miss_probs(&field, &grid, rect.hi, n / 2, n / 2, &widths)?
            } else {
                vec![f64::NAN; widths.len()]
            };
            Ok((dev, miss))
        })?;
        let devs: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let (m, se) = mean_se(&devs);
        let med = median(&devs)?;
        sanity &= med > 0.0 && med < n as f64 / 2.0;
        medians.push(med);
        let mut stats = BTreeMap::from([
            ("median_deviation".to_string(), med),
            ("mean_deviation".to_string(), m),
            ("mean_deviation_se".to_string(), se),
            ("q25_deviation".to_string(), quantile(&devs, 0.25)?),
            ("q75_deviation".to_string(), quantile(&devs, 0.75)?),
            ("scaled_median".to_string(), med / two_thirds(n)),
        ]);
        if with_miss {
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for (k, name) in miss_names.iter().enumerate() {
                let col: Vec<f64> = rows.iter().map(|r| r.1[k]).collect();
                let (pm, pse) = mean_se(&col);
                stats.insert(name.clone(), pm);
                stats.insert(format!("{name}_se"), pse);
                if pm > 0.0 {
                    xs.push(MISS_B[k]);
                    ys.push(pm);
                } else {
                    rep.warnings.push(format!("N={n}: miss probability at b={} is zero and left out of the fit", MISS_B[k]));
                }
            }
            match fit_power_law(&xs, &ys) {
                Ok(fit) => {
                    rep.verdicts.push(Verdict::new(
                        "segment miss decays at least like b^-2",
                        at_most(fit.slope, decay_max),
                        format!("N={n}: slope {:.3} vs threshold {decay_max}", fit.slope),
                    ));
                    rep.fits.push(FitRecord { name: format!("miss_vs_b_N{n}"), x: xs, y: ys, fit });
                }
                Err(e) => rep.warnings.push(format!("N={n}: miss-probability fit unavailable: {e}")),
            }
        }
        for (r, (dev, miss)) in rows.into_iter().enumerate() {
            let mut v = vec![dev];
            v.extend(miss);
            rep.replicas.push(n, r, v);
        }
        rep.sizes.push(SizeStats { n, stats });
    }
    rep.verdicts.push(Verdict::new("median deviation in (0, N/2)", sanity, format!("medians {medians:?}")));
    let xs: Vec<f64> = cfg.sizes.iter().map(|&n| n as f64).collect();
    match fit_power_law(&xs, &medians) {
        Ok(fit) => {
            rep.verdicts.push(Verdict::new(
                "wandering exponent in window",
                exponent_in_window(fit.slope, lo, hi),
                format!("slope {:.4} (95% CI {:.3}..{:.3}) vs [{lo}, {hi}]", fit.slope, fit.slope_ci.0, fit.slope_ci.1),
            ));
            rep.fits.push(FitRecord { name: "median_deviation_vs_N".to_string(), x: xs, y: medians, fit });
        }
        Err(e) => rep.warnings.push(format!("wandering exponent not fitted: {e}")),
    }
    if !cfg.sizes.contains(&miss_size) {
        rep.warnings.push(format!("miss_size {miss_size} is not among the sizes; no miss probabilities computed"));
    }
    Ok(rep)
}

/// Target `v = round(N·ξ(α))` for the stationary quadrant at the origin.
pub fn exit_target(n: i64, alpha: f64) -> Result<Vertex> {
    let xi = characteristic_direction(ParamRho::new(alpha)?);
    let v = Vertex::new((n as f64 * xi.xi1()).round() as i64, (n as f64 * xi.xi2()).round() as i64);
    if v.x < 1 || v.y < 1 {
        return geometry(format!("target {v} is degenerate for N={n}, alpha={alpha}"));
    }
    Ok(v)
}

pub fn run_exit_tail(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    cfg.require_sizes_in(4, 4096)?;
    let alpha = cfg.require_open("alpha", 0.5, 0.0, 1.0)?;
    let decay_max = cfg.param("decay_max", -2.0);
    let mut rep = ExperimentReport::new(EXIT_TAIL, cfg);
    rep.calibration = BTreeMap::from([("decay_max".to_string(), decay_max), ("balance_se".to_string(), 4.0)]);
    let mut cols = vec!["p_positive", "p_negative"];
    let names: Vec<String> = EXIT_B.iter().map(|b| format!("tail_b{b}")).collect();
    cols.extend(names.iter().map(|s| s.as_str()));
    rep.replicas = ReplicaTable::new(&cols);

    let fit_size = *cfg.sizes.last().unwrap();
    for &n in &cfg.sizes {
        let v = exit_target(n, alpha)?;
        let ks: Vec<i64> = EXIT_B.iter().map(|b| (b * two_thirds(n) * (1.0 - 1e-12)).ceil() as i64).collect();
        let rows = run_replicas(cfg.threads, cfg.replicas, |r| {
            let mut rng = replica_stream(cfg.seed, EXIT_TAIL, n, r);
            let rect = Rect::new(Vertex::new(0, 0), v)?;
            let bulk = make_bulk_field(rect, 1.0, rng.next_u64())?;
            let q = build_stationary_quadrant(rect.lo, alpha, 1.0, rect, &bulk, &mut rng)?;
            let d = exit_distribution_exact(q.composite_field(), rect.lo, rect.lo, v, Convention::UnitBase)?;
            let pos: f64 = d.horizontal.iter().sum();
            let neg: f64 = d.vertical.iter().sum();
            let mut row = vec![pos, neg];
            row.extend(ks.iter().map(|&k| d.tail_ge(k)));
            Ok(row)
        })?;
        let col = |k: usize| rows.iter().map(|r| r[k]).collect::<Vec<f64>>();
        let (pp, _) = mean_se(&col(0));
        let (pn, _) = mean_se(&col(1));
        let diff: Vec<f64> = rows.iter().map(|r| r[0] - r[1]).collect();
        let (dm, dse) = mean_se(&diff);
        let mass = rows.iter().map(|r| (r[0] + r[1] - 1.0).abs()).fold(0.0, f64::max);
        let mut stats = BTreeMap::from([
            ("p_positive".to_string(), pp),
            ("p_negative".to_string(), pn),
            ("balance_diff".to_string(), dm),
            ("balance_diff_se".to_string(), dse),
            ("max_mass_error".to_string(), mass),
            ("target_x".to_string(), v.x as f64),
            ("target_y".to_string(), v.y as f64),
        ]);
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (k, name) in names.iter().enumerate() {
            let (m, se) = mean_se(&col(k + 2));
            stats.insert(name.clone(), m);
            stats.insert(format!("{name}_se"), se);
            stats.insert(format!("{name}_threshold"), ks[k] as f64);
            if m > 0.0 {
                xs.push(EXIT_B[k]);
                ys.push(m);
            }
        }
        rep.verdicts.push(Verdict::new(
            "exit law has total mass one",
            mass < 1e-9,
            format!("N={n}: max |P(tau>0) + P(tau<0) - 1| = {mass:.2e}"),
        ));
        rep.verdicts.push(Verdict::new(
            "boundary attractions balance",
            within_se(dm, 0.0, dse, 4.0),
            format!("N={n}: P(tau>0) - P(tau<0) = {dm:.4} +- {dse:.4}"),
        ));
        match fit_power_law(&xs, &ys) {
            Ok(fit) => {
                if n == fit_size {
                    rep.verdicts.push(Verdict::new(
                        "exit tail decays at least like b^-2",
                        at_most(fit.slope, decay_max),
                        format!("N={n}: slope {:.3} vs threshold {decay_max}", fit.slope),
                    ));
                }
                rep.fits.push(FitRecord { name: format!("exit_tail_vs_b_N{n}"), x: xs, y: ys, fit });
            }
            Err(e) => rep.warnings.push(format!("N={n}: exit-tail fit unavailable: {e}")),
        }
        for (r, row) in rows.into_iter().enumerate() {
            rep.replicas.push(n, r, row);
        }
        rep.sizes.push(SizeStats { n, stats });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymer::enumerate_paths;

    #[test]
    fn miss_probability_against_enumeration() {
        let rect = Rect::from_coords(0, 0, 6, 6).unwrap();
        let f = make_bulk_field(rect, 1.0, 8).unwrap();
        let g = log_partition_forward(&f, rect.lo, Convention::WithBaseWeight).unwrap();
        let got = segment_miss_probs(&f, &g, rect.hi, 3, 3, &[0, 1, 2, 3]).unwrap();
        let paths = enumerate_paths(rect.lo, rect.hi).unwrap();
        for (k, w) in [0i64, 1, 2, 3].into_iter().enumerate() {
            let want: f64 = paths
                .iter()
                .filter(|p| p.vertices().iter().all(|z| z.x != 3 || (z.y - 3).abs() > w))
                .map(|p| crate::polymer::quenched_path_log_prob(&g, &f, p).unwrap().exp())
                .sum();
            assert!((got[k] - want).abs() < 1e-12, "w={w}: {} vs {want}", got[k]);
        }
        assert_eq!(got[3], 0.0);
        assert!(segment_miss_probs(&f, &g, rect.hi, 0, 3, &[1]).is_err());
    }

    #[test]
    fn small_wandering_run() {
        let mut cfg = kpz_default_config();
        cfg.sizes = vec![32, 48, 64];
        cfg.replicas = 60;
        cfg.params.insert("miss_size".into(), 64.0);
        let r = run_kpz_wandering(&cfg).unwrap();
        assert!(r.verdict("median deviation in (0, N/2)").unwrap().passed);
        assert_eq!(r.sizes.len(), 3);
        assert!(r.size_stat(64, "miss_b1").unwrap() > 0.0);
        assert_eq!(r.replicas.rows.len(), 180);
        cfg.sizes = vec![16];
        assert!(run_kpz_wandering(&cfg).is_err());
    }

    #[test]
    fn exit_tail_small() {
        let mut cfg = exit_default_config();
        cfg.sizes = vec![64];
        cfg.replicas = 200;
        let r = run_exit_tail(&cfg).unwrap();
        assert!(r.verdict("exit law has total mass one").unwrap().passed);
        assert!(r.verdict("boundary attractions balance").unwrap().passed);
        assert_eq!(exit_target(512, 0.5).unwrap(), Vertex::new(256, 256));
        cfg.params.insert("alpha".into(), 1.2);
        assert!(run_exit_tail(&cfg).is_err());
    }
}
