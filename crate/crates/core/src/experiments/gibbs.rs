//! Consistency of segment resampling with the point-to-point measure.

use std::collections::{BTreeMap, HashMap};

use super::config::ExperimentConfig;
use super::report::{ExperimentReport, ReplicaTable, SizeStats, TestRecord, Verdict};
use super::runner::{replica_stream, run_replicas};
use super::stats::chi_square_test;
use super::verdicts::test_passes;
use crate::environment::{make_bulk_field, WeightField};
use crate::error::Result;
use crate::lattice::Rect;
use crate::polymer::{
    enumerate_paths, gibbs_resample, log_partition_forward, quenched_path_log_prob, sample_path, Convention, LogZGrid,
    Path,
};

pub const GIBBS: &str = "gibbs";

pub fn gibbs_default_config() -> ExperimentConfig {
    ExperimentConfig::new(GIBBS, vec![2, 3], 100_000, 1).with_param("sigma", 1.0).with_param("level", 0.001)
}

/// How the resampled segment `[k, l]` is chosen in each trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Segment {
    /// Uniform over `0 ≤ k < l ≤ len − 1`.
    Random,
    Whole,
}

/// Exact law of `gibbs_resample(X, k, l)` when `X ~ Q_{o,p}`, by summing the
/// kernel over all input paths. Indexed like `paths`.
pub fn resampled_law(field: &WeightField, paths: &[Path], q: &[f64], k: usize, l: usize) -> Result<Vec<f64>> {
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut out = vec![0.0; paths.len()];
    for (x, &qx) in paths.iter().zip(q) {
        if k == l {
            out[index[x]] += qx;
            continue;
        }
        let (a, b) = (x.vertices()[k], x.vertices()[l]);
        let sub = field.sub_field(Rect::new(a, b)?)?;
        let g = log_partition_forward(&sub, a, Convention::WithBaseWeight)?;
        for seg in enumerate_paths(a, b)? {
            let w = quenched_path_log_prob(&g, &sub, &seg)?.exp();
            let mut vs = x.vertices()[..k].to_vec();
            vs.extend_from_slice(seg.vertices());
            vs.extend_from_slice(&x.vertices()[l + 1..]);
            out[index[&Path::new(vs)?]] += qx * w;
        }
    }
    Ok(out)
}

struct Instance {
    field: WeightField,
    grid: LogZGrid,
    paths: Vec<Path>,
    q: Vec<f64>,
}

fn instance(side: i64, sigma: f64, seed: u64) -> Result<Instance> {
    let rect = Rect::from_coords(0, 0, side - 1, side - 1)?;
    let field = make_bulk_field(rect, sigma, seed)?;
    let grid = log_partition_forward(&field, rect.lo, Convention::WithBaseWeight)?;
    let paths = enumerate_paths(rect.lo, rect.hi)?;
    let q = paths.iter().map(|p| quenched_path_log_prob(&grid, &field, p).map(|l| l.exp())).collect::<Result<_>>()?;
    Ok(Instance { field, grid, paths, q })
}

fn resample_counts(cfg: &ExperimentConfig, inst: &Instance, side: i64, seg: Segment) -> Result<Vec<u64>> {
    let label = if seg == Segment::Whole { "gibbs-whole" } else { GIBBS };
    let hit = run_replicas(cfg.threads, cfg.replicas, |r| {
        let mut rng = replica_stream(cfg.seed, label, side, r);
        let x = sample_path(&inst.grid, inst.grid.rect().hi, &mut rng)?;
        let last = x.len() - 1;
        let (k, l) = match seg {
            Segment::Whole => (0, last),
            Segment::Random => {
                let k = rng.below(last as u64) as usize;
                (k, k + 1 + rng.below((last - k) as u64) as usize)
            }
        };
        let y = gibbs_resample(&x, k, l, &inst.field, &mut rng)?;
        Ok(inst.paths.iter().position(|p| *p == y).expect("resampled path is admissible"))
    })?;
    let mut counts = vec![0u64; inst.paths.len()];
    for i in hit {
        counts[i] += 1;
    }
    Ok(counts)
}

pub fn run_gibbs_consistency(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    cfg.require_sizes_in(2, 4)?;
    let sigma = cfg.require_open("sigma", 1.0, 0.0, f64::INFINITY)?;
    let level = cfg.require_open("level", 0.001, 0.0, 1.0)?;
    let mut rep = ExperimentReport::new(GIBBS, cfg);
    rep.calibration = BTreeMap::from([("level".to_string(), level)]);
    rep.replicas = ReplicaTable::new(&["count", "probability"]);
    for &side in &cfg.sizes {
        let inst = instance(side, sigma, replica_stream(cfg.seed, "gibbs-env", side, 0).next_u64())?;
        let mut stats = BTreeMap::new();
        for seg in [Segment::Random, Segment::Whole] {
            let counts = resample_counts(cfg, &inst, side, seg)?;
            let (stat, dof, p) = chi_square_test(&counts, &inst.q)?;
            let name = format!("{side}x{side} {} segment chi-square", if seg == Segment::Whole { "whole" } else { "random" });
            let passed = test_passes(p, level);
            rep.tests.push(TestRecord { name: name.clone(), statistic: stat, p_value: p, level, passed });
            rep.verdicts.push(Verdict::new(&name, passed, format!("chi2 = {stat:.3} on {dof} dof, p = {p:.4}")));
            if seg == Segment::Random {
                for (i, (&c, &qx)) in counts.iter().zip(&inst.q).enumerate() {
                    rep.replicas.push(side, i, vec![c as f64, qx]);
                }
            }
        }
        // Kernel invariance, integrated against indicators of single paths
        // and of passing through each vertex.
        let len = inst.paths[0].len();
        let mut worst: f64 = 0.0;
        let mut degenerate = true;
        for k in 0..len {
            for l in k..len {
                let law = resampled_law(&inst.field, &inst.paths, &inst.q, k, l)?;
                for (a, b) in law.iter().zip(&inst.q) {
                    worst = worst.max((a - b).abs());
                }
                for z in inst.field.rect().vertices() {
                    let through = |w: &[f64]| -> f64 {
                        inst.paths.iter().zip(w).filter(|(p, _)| p.contains(z)).map(|(_, x)| x).sum()
                    };
                    worst = worst.max((through(&law) - through(&inst.q)).abs());
                }
                if k == l {
                    degenerate &= law == inst.q;
                }
            }
        }
        stats.insert("paths".to_string(), inst.paths.len() as f64);
        stats.insert("kernel_max_error".to_string(), worst);
        rep.verdicts.push(Verdict::new(
            &format!("{side}x{side} kernel preserves the measure"),
            worst < 1e-12,
            format!("max deviation {worst:.2e}"),
        ));
        rep.verdicts.push(Verdict::new(&format!("{side}x{side} empty segment is the identity"), degenerate, ""));
        rep.sizes.push(SizeStats { n: side, stats });
    }
    Ok(rep)
}
