//! Deterministic identity, inequality and coupling checks, and the moment
//! checks of the weight and stationary laws. Each returns a report whose
//! verdicts count violations.

use std::collections::BTreeMap;

use super::config::ExperimentConfig;
use super::report::{ExperimentReport, SizeStats, Verdict};
use super::runner::{replica_stream, run_replicas};
use super::stats::{mean, mean_se};
use super::verdicts::within_se;
use crate::couplings::{
    build_step_field, coupled_tree_paths, crossing_bound_check, pair_order, path_order, sandwich_check, SandwichConfig,
};
use crate::environment::{make_bulk_field, sample_log_inverse_gamma, RngStream, UniformField, WeightField};
use crate::error::Result;
use crate::lattice::{Rect, Vertex, E1, E2};
use crate::numerics::{digamma, trigamma};
use crate::polymer::{
    edge_crossing_probs, enumerate_paths, exit_distribution_exact, log_partition_exit_tail, log_partition_forward,
    nested_boundary_field, nested_partition, quenched_path_log_prob, Convention, ExitSide, LogZGrid, Step,
};
use crate::stationary::{apply_involution, build_stationary_quadrant, dd_identity_residual, RatioKind, RatioSeq};

pub const IDENTITIES: &str = "identities";
pub const INEQUALITIES: &str = "inequalities";
pub const COUPLINGS: &str = "couplings";
pub const MOMENTS: &str = "moments";

pub fn identities_default_config() -> ExperimentConfig {
    ExperimentConfig::new(IDENTITIES, vec![10], 50, 1)
        .with_param("triples", 10_000.0)
        .with_param("windows", 100.0)
        .with_param("crossing_instances", 200.0)
}

pub fn inequalities_default_config() -> ExperimentConfig {
    ExperimentConfig::new(INEQUALITIES, vec![8], 1000, 1).with_param("sandwich_n", 64.0).with_param("sandwich_replicas", 200.0)
}

pub fn couplings_default_config() -> ExperimentConfig {
    ExperimentConfig::new(COUPLINGS, vec![10], 500, 1).with_param("pairs", 20.0)
}

pub fn moments_default_config() -> ExperimentConfig {
    ExperimentConfig::new(MOMENTS, vec![10], 10_000, 1)
        .with_param("alpha", 0.5)
        .with_param("sigma", 1.0)
        .with_param("draws", 100_000.0)
}

fn count(cfg: &ExperimentConfig, key: &str, default: f64) -> usize {
    cfg.param(key, default).max(0.0) as usize
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// `a ≤ b` on log ratios, up to rounding relative to the log partition
/// functions involved.
fn log_le(a: f64, b: f64, scale: f64) -> bool {
    a <= b + 1e-12 * (1.0 + scale)
}

fn pick(rng: &mut RngStream, lo: i64, hi: i64) -> i64 {
    lo + rng.below((hi - lo + 1) as u64) as i64
}

/// Quenched crossing law by summing over all paths from `u` to `v`.
fn crossing_by_enumeration(field: &WeightField, u: Vertex, v: Vertex) -> Result<BTreeMap<i64, f64>> {
    let sub = field.sub_field(Rect::new(u, v)?)?;
    let g = log_partition_forward(&sub, u, Convention::WithBaseWeight)?;
    let mut out = BTreeMap::new();
    for path in enumerate_paths(u, v)? {
        let q = quenched_path_log_prob(&g, &sub, &path)?.exp();
        let vs = path.vertices();
        let i = vs.windows(2).find(|w| w[0].x == 0 && w[1].x == 1).map(|w| w[0].y).expect("path crosses the axis");
        *out.entry(i).or_insert(0.0) += q;
    }
    Ok(out)
}

pub fn run_identity_suite(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    cfg.require_sizes_in(3, 10)?;
    let side = *cfg.sizes.last().unwrap();
    let mut rep = ExperimentReport::new(IDENTITIES, cfg);
    let mut stats = BTreeMap::new();

    let mut rng = replica_stream(cfg.seed, "involution", 0, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..count(cfg, "triples", 10_000.0) {
        let mut draw = || (10.0 * rng.next_f64() - 5.0).exp();
        let (i, j, y) = (draw(), draw(), draw());
        let (a, b, c) = apply_involution(i, j, y)?;
        let (a, b, c) = apply_involution(a, b, c)?;
        worst = worst.max(rel(a, i)).max(rel(b, j)).max(rel(c, y));
    }
    stats.insert("involution_max_rel_error".to_string(), worst);
    rep.verdicts.push(Verdict::new("involution is an involution", worst < 1e-12, format!("max relative error {worst:.2e}")));

    let mut rng = replica_stream(cfg.seed, "dd", 0, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..count(cfg, "windows", 100.0) {
        let mut draw = |t: f64, k| -> Result<RatioSeq> {
            let logs = (0..30).map(|_| sample_log_inverse_gamma(t, &mut rng)).collect::<Result<_>>()?;
            RatioSeq::from_logs(-29, logs, k, t)
        };
        let (a, i, y) = (draw(0.2, RatioKind::I)?, draw(0.4, RatioKind::I)?, draw(1.0, RatioKind::Y)?);
        let seed = sample_log_inverse_gamma(0.6, &mut rng)?.exp();
        worst = worst.max(dd_identity_residual(&a, &i, &y, seed)?);
    }
    stats.insert("dd_max_residual".to_string(), worst);
    rep.verdicts.push(Verdict::new("DD identity", worst < 1e-9, format!("max residual {worst:.2e}")));

    // Nesting and exit identities on random rectangles up to side x side.
    let (mut nest, mut exit): (f64, f64) = (0.0, 0.0);
    for r in 0..cfg.replicas {
        let mut g = replica_stream(cfg.seed, IDENTITIES, side, r);
        let (w, h) = (pick(&mut g, 3, side), pick(&mut g, 3, side));
        let rect = Rect::from_coords(0, 0, w - 1, h - 1)?;
        let field = make_bulk_field(rect, 1.0, g.next_u64())?;
        let u = Vertex::new(pick(&mut g, 0, w - 3), pick(&mut g, 0, h - 3));
        let v = Vertex::new(pick(&mut g, u.x, w - 2), pick(&mut g, u.y, h - 2));
        let wv = rect.hi;
        let grid = log_partition_forward(&field, u, Convention::WithBaseWeight)?;
        let nested = nested_partition(&field, &grid, v, wv)?;
        for z in Rect::new(v, wv)?.vertices() {
            nest = nest.max(rel(nested.logz(z), grid.logz(z) - grid.logz(v)));
        }
        let direct = exit_distribution_exact(&field, u, v, wv, Convention::WithBaseWeight)?;
        let inherited = exit_distribution_exact(&nested_boundary_field(&field, &grid, v, wv)?, v, v, wv, Convention::UnitBase)?;
        for (l, p) in direct.iter() {
            exit = exit.max(rel(p, inherited.prob(l)));
        }
    }
    stats.insert("nesting_max_rel_error".to_string(), nest);
    stats.insert("exit_identity_max_rel_error".to_string(), exit);
    rep.verdicts.push(Verdict::new("nesting identity", nest < 1e-10, format!("max relative error {nest:.2e}")));
    rep.verdicts.push(Verdict::new("exit identity", exit < 1e-10, format!("max relative error {exit:.2e}")));

    // Edge crossings on instances small enough to enumerate.
    let (mut mass, mut enumer): (f64, f64) = (0.0, 0.0);
    let field_rect = Rect::from_coords(-4, -4, 4, 4)?;
    for r in 0..count(cfg, "crossing_instances", 200.0) {
        let mut g = replica_stream(cfg.seed, "edge-crossing", 0, r);
        let field = make_bulk_field(field_rect, 1.0, g.next_u64())?;
        let u = Vertex::new(pick(&mut g, -4, -1), pick(&mut g, -4, 0));
        let v = Vertex::new(pick(&mut g, 1, 4), pick(&mut g, u.y.max(0), 4));
        let d = edge_crossing_probs(&field, u, v)?;
        mass = mass.max((d.total() - 1.0).abs());
        for (i, q) in crossing_by_enumeration(&field, u, v)? {
            enumer = enumer.max((d.prob(i) - q).abs());
        }
    }
    stats.insert("crossing_mass_error".to_string(), mass);
    stats.insert("crossing_enumeration_error".to_string(), enumer);
    rep.verdicts.push(Verdict::new("edge crossing probabilities sum to one", mass < 1e-12, format!("{mass:.2e}")));
    rep.verdicts.push(Verdict::new("edge crossing matches enumeration", enumer < 1e-12, format!("{enumer:.2e}")));
    rep.sizes.push(SizeStats { n: side, stats });
    Ok(rep)
}

/// Violation counts of the partition-function comparison inequalities on one
/// environment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct InequalityCounts {
    pub boundary_dominance: usize,
    pub shift: usize,
    pub ordered_bases: usize,
    pub restricted: usize,
    pub exit_monotone: usize,
    pub crossing_bound: usize,
    pub checks: usize,
}

impl InequalityCounts {
    fn add(&mut self, o: &InequalityCounts) {
        self.boundary_dominance += o.boundary_dominance;
        self.shift += o.shift;
        self.ordered_bases += o.ordered_bases;
        self.restricted += o.restricted;
        self.exit_monotone += o.exit_monotone;
        self.crossing_bound += o.crossing_bound;
        self.checks += o.checks;
    }
}

fn ratio(g: &LogZGrid, z: Vertex, e: Vertex) -> (f64, f64) {
    let (a, b) = (g.logz(z), g.logz(z - e));
    (a - b, a.abs().max(b.abs()))
}

/// All comparison inequalities on one `side × side` environment drawn from `rng`.
pub fn inequality_checks(side: i64, rng: &mut RngStream) -> Result<InequalityCounts> {
    let rect = Rect::from_coords(0, 0, side - 1, side - 1)?;
    let field = make_bulk_field(rect, 1.0, rng.next_u64())?;
    let mut c = InequalityCounts::default();
    let grids: Vec<LogZGrid> =
        rect.vertices().map(|x| log_partition_forward(&field, x, Convention::WithBaseWeight)).collect::<Result<_>>()?;
    let grid = |x: Vertex| &grids[rect.index(x)];

    // Boundary dominance: smaller weights on the e₁-axis, larger on the e₂-axis.
    let u = rect.lo;
    let mut lowered = field.clone();
    for k in 1..side {
        lowered.set_log_weight(u + k * E1, field.log_weight(u + k * E1) - 2.0 * rng.next_f64())?;
        lowered.set_log_weight(u + k * E2, field.log_weight(u + k * E2) + 2.0 * rng.next_f64())?;
    }
    let g1 = log_partition_forward(&lowered, u, Convention::WithBaseWeight)?;
    let g2 = grid(u);
    for x in rect.vertices() {
        if x.x >= u.x + 1 {
            let ((a, sa), (b, sb)) = (ratio(&g1, x, E1), ratio(g2, x, E1));
            c.boundary_dominance += !log_le(a, b, sa.max(sb)) as usize;
            c.checks += 1;
        }
        if x.y >= u.y + 1 {
            let ((a, sa), (b, sb)) = (ratio(g2, x, E2), ratio(&g1, x, E2));
            c.boundary_dominance += !log_le(a, b, sa.max(sb)) as usize;
            c.checks += 1;
        }
    }

    for u in rect.vertices() {
        for z in rect.vertices().filter(|z| z.x >= u.x + 2 && z.y >= u.y + 1) {
            let (a, sa) = ratio(grid(u), z, E1);
            let (b, sb) = ratio(grid(u + E1), z, E1);
            c.shift += !log_le(a, b, sa.max(sb)) as usize;
            if u.y > rect.lo.y {
                let (b, sb) = ratio(grid(u - E2), z, E1);
                c.shift += !log_le(a, b, sa.max(sb)) as usize;
            }
            c.checks += 2;
        }
    }

    for x in rect.vertices() {
        for y in rect.vertices().filter(|&y| x.preceq(y) && x != y) {
            let lo = Vertex::new(x.x.max(y.x) + 1, x.y.max(y.y) + 1);
            for z in rect.vertices().filter(|z| lo.le(*z)) {
                let ((a, sa), (b, sb)) = (ratio(grid(x), z, E1), ratio(grid(y), z, E1));
                c.ordered_bases += !log_le(a, b, sa.max(sb)) as usize;
                let ((a, sa), (b, sb)) = (ratio(grid(y), z, E2), ratio(grid(x), z, E2));
                c.ordered_bases += !log_le(a, b, sa.max(sb)) as usize;
                c.checks += 2;
            }
        }
    }

    // Restricted ratios and exit monotonicity from a random base.
    let o = Vertex::new(pick(rng, 0, side / 2), pick(rng, 0, side / 2));
    let g = grid(o);
    for k in 1..side {
        for (side_kind, e) in [(ExitSide::Horizontal, E1), (ExitSide::Vertical, E2)] {
            if !rect.contains(o + k * e) {
                continue;
            }
            let t = log_partition_exit_tail(&field, o, Convention::WithBaseWeight, side_kind, k)?;
            for x in rect.vertices() {
                let d = x - o;
                let (along, across) = if e == E1 { (d.x, d.y) } else { (d.y, d.x) };
                if across >= 1 && along > k {
                    let (a, sa) = ratio(g, x, e);
                    let (tx, txe) = (t.logz(x), t.logz(x - e));
                    c.restricted += !log_le(a, tx - txe, sa.max(tx.abs()).max(txe.abs())) as usize;
                    c.checks += 1;
                }
                // Q_{o,x}(τ ≥ k) against Q_{o,x+e₁}(τ ≥ k).
                if e == E1 && across >= 1 && along >= k && rect.contains(x + E1) {
                    let a = t.logz(x) - g.logz(x);
                    let b = t.logz(x + E1) - g.logz(x + E1);
                    c.exit_monotone += !log_le(a, b, g.logz(x + E1).abs()) as usize;
                    c.checks += 1;
                }
            }
        }
    }

    // Crossing bound on the same weights recentred around the y-axis.
    let h = side / 2;
    let shifted = WeightField::from_fn(Rect::from_coords(-h, -h, side - 1 - h, side - 1 - h)?, |z| {
        field.log_weight(z + Vertex::new(h, h))
    })?;
    let sr = shifted.rect();
    for _ in 0..4 {
        let u = Vertex::new(pick(rng, sr.lo.x, -1), pick(rng, sr.lo.y, sr.hi.y));
        let v = Vertex::new(pick(rng, 1, sr.hi.x), pick(rng, u.y, sr.hi.y));
        c.crossing_bound += !crossing_bound_check(&shifted, u, v)? as usize;
        c.checks += 1;
    }
    Ok(c)
}

pub fn run_inequality_suite(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    cfg.require_sizes_in(4, 16)?;
    let side = *cfg.sizes.last().unwrap();
    let sandwich_n = cfg.param("sandwich_n", 64.0) as i64;
    let sandwich_reps = count(cfg, "sandwich_replicas", 200.0);
    let mut rep = ExperimentReport::new(INEQUALITIES, cfg);
    let per_env = run_replicas(cfg.threads, cfg.replicas, |r| inequality_checks(side, &mut replica_stream(cfg.seed, INEQUALITIES, side, r)))?;
    let mut total = InequalityCounts::default();
    for c in &per_env {
        total.add(c);
    }
    let named = [
        ("boundary dominance of ratios", total.boundary_dominance),
        ("ratio shift along e1 and -e2", total.shift),
        ("ratios ordered by base points", total.ordered_bases),
        ("restricted exit ratios", total.restricted),
        ("exit tail monotone in the endpoint", total.exit_monotone),
        ("crossing probability bound", total.crossing_bound),
    ];
    let mut stats = BTreeMap::from([("checks".to_string(), total.checks as f64), ("environments".to_string(), cfg.replicas as f64)]);
    for (name, v) in named {
        stats.insert(format!("{}_violations", name.replace(' ', "_")), v as f64);
        rep.verdicts.push(Verdict::new(name, v == 0, format!("{v} violations")));
    }
    rep.sizes.push(SizeStats { n: side, stats });

    let sandwiches = run_replicas(cfg.threads, sandwich_reps, |r| {
        sandwich_check(&SandwichConfig::new(sandwich_n), &mut replica_stream(cfg.seed, "sandwich", sandwich_n, r))
    })?;
    let dirty = sandwiches.iter().filter(|s| !s.clean()).count();
    let events = sandwiches.iter().filter(|s| s.event_a && s.event_b).count();
    rep.sizes.push(SizeStats {
        n: sandwich_n,
        stats: BTreeMap::from([
            ("sandwich_replicas".to_string(), sandwich_reps as f64),
            ("events_held".to_string(), events as f64),
            ("unclean".to_string(), dirty as f64),
        ]),
    });
    rep.verdicts.push(Verdict::new("conditional sandwiches", dirty == 0, format!("{dirty} unclean, events held in {events}")));
    if events == 0 && sandwich_reps > 0 {
        rep.warnings.push("sandwich events never held; bounds were not exercised".to_string());
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, Default)]
struct CouplingCounts {
    order: usize,
    termination: usize,
    step_field: usize,
}

fn coupling_checks(side: i64, pairs: usize, rng: &mut RngStream) -> Result<CouplingCounts> {
    let rect = Rect::from_coords(0, 0, side - 1, side - 1)?;
    let field = make_bulk_field(rect, 1.0, rng.next_u64())?;
    let uniforms = UniformField::generate(rect, rng.next_u64());
    let mut c = CouplingCounts::default();
    let h = side / 2;
    let mut list = Vec::with_capacity(2 * pairs);
    while list.len() < 2 * pairs {
        let x1 = Vertex::new(pick(rng, 0, h - 1), pick(rng, 0, h - 1));
        let x2 = x1 + Vertex::new(pick(rng, 0, 2), -pick(rng, 0, 2));
        let y1 = Vertex::new(pick(rng, h, side - 1), pick(rng, h, side - 1));
        let y2 = y1 + Vertex::new(pick(rng, 0, 2), -pick(rng, 0, 2));
        if rect.contains(x2) && rect.contains(y2) && pair_order(x1, y1, x2, y2) {
            list.push((x1, y1));
            list.push((x2, y2));
        }
    }
    let paths = coupled_tree_paths(&field, &uniforms, &list)?;
    c.order = (0..list.len()).step_by(2).filter(|&k| !path_order(&paths[k], &paths[k + 1])).count();

    let x = Vertex::new(pick(rng, 0, h), pick(rng, 1, h));
    let u = x + Vertex::new(pick(rng, 0, 2), -pick(rng, 1, x.y.min(2)));
    let tx = build_step_field(&field, &log_partition_forward(&field, x, Convention::UnitBase)?, &uniforms)?;
    let tu = build_step_field(&field, &log_partition_forward(&field, u, Convention::UnitBase)?, &uniforms)?;
    for y in tx.rect().vertices() {
        match tx.follow(y) {
            Ok(p) if p.o() == x && p.p() == y => {}
            _ => c.termination += 1,
        }
    }
    let lo = Vertex::new(x.x.max(u.x) + 1, x.y.max(u.y) + 1);
    for z in rect.vertices().filter(|z| lo.le(*z)) {
        let (sx, su) = (tx.step(z), tu.step(z));
        if (sx == Some(Step::E2) && su != Some(Step::E2)) || (su == Some(Step::E1) && sx != Some(Step::E1)) {
            c.step_field += 1;
        }
    }
    Ok(c)
}

pub fn run_coupling_suite(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    cfg.require_sizes_in(6, 32)?;
    let side = *cfg.sizes.last().unwrap();
    let pairs = count(cfg, "pairs", 20.0).max(1);
    let mut rep = ExperimentReport::new(COUPLINGS, cfg);
    let per_env = run_replicas(cfg.threads, cfg.replicas, |r| coupling_checks(side, pairs, &mut replica_stream(cfg.seed, COUPLINGS, side, r)))?;
    let sum = |f: fn(&CouplingCounts) -> usize| per_env.iter().map(f).sum::<usize>();
    let (order, term, step) = (sum(|c| c.order), sum(|c| c.termination), sum(|c| c.step_field));
    rep.sizes.push(SizeStats {
        n: side,
        stats: BTreeMap::from([
            ("ordered_pairs".to_string(), (cfg.replicas * pairs) as f64),
            ("order_violations".to_string(), order as f64),
            ("termination_failures".to_string(), term as f64),
            ("step_field_violations".to_string(), step as f64),
        ]),
    });
    rep.verdicts.push(Verdict::new("tree paths respect the path order", order == 0, format!("{order} violations")));
    rep.verdicts.push(Verdict::new("tree paths terminate at the base", term == 0, format!("{term} failures")));
    rep.verdicts.push(Verdict::new("step fields are monotone in the base", step == 0, format!("{step} violations")));
    Ok(rep)
}

pub fn run_moment_suite(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    cfg.require_sizes_in(1, 64)?;
    let alpha = cfg.require_open("alpha", 0.5, 0.0, 1.0)?;
    let sigma = cfg.require_open("sigma", 1.0, alpha, f64::INFINITY)?;
    let draws = count(cfg, "draws", 100_000.0).max(2);
    let mut rep = ExperimentReport::new(MOMENTS, cfg);
    rep.calibration = BTreeMap::from([("se_multiple".to_string(), 4.0)]);

    for (idx, theta) in [0.5, 1.0, 2.5].into_iter().enumerate() {
        let mut rng = replica_stream(cfg.seed, "log-inverse-gamma", idx as i64, 0);
        let xs: Vec<f64> = (0..draws).map(|_| sample_log_inverse_gamma(theta, &mut rng)).collect::<Result<_>>()?;
        let (m, se) = mean_se(&xs);
        let sq: Vec<f64> = xs.iter().map(|x| (x - m) * (x - m)).collect();
        let (var, var_se) = mean_se(&sq);
        let (want_m, want_v) = (-digamma(theta)?, trigamma(theta)?);
        rep.verdicts.push(Verdict::new(
            &format!("log inverse gamma mean, theta = {theta}"),
            within_se(m, want_m, se, 4.0),
            format!("{m:.5} vs {want_m:.5}, se {se:.2e}"),
        ));
        rep.verdicts.push(Verdict::new(
            &format!("log inverse gamma variance, theta = {theta}"),
            within_se(var, want_v, var_se, 4.0),
            format!("{var:.5} vs {want_v:.5}, se {var_se:.2e}"),
        ));
    }

    for &n in &cfg.sizes {
        let rect = Rect::from_coords(0, 0, n, n)?;
        let logs = run_replicas(cfg.threads, cfg.replicas, |r| {
            let mut rng = replica_stream(cfg.seed, MOMENTS, n, r);
            let bulk = make_bulk_field(rect, sigma, rng.next_u64())?;
            let q = build_stationary_quadrant(rect.lo, alpha, sigma, rect, &bulk, &mut rng)?;
            Ok(q.logz().logz(rect.hi))
        })?;
        let (m, se) = mean_se(&logs);
        let want = -(n as f64) * (digamma(sigma - alpha)? + digamma(alpha)?);
        rep.sizes.push(SizeStats {
            n,
            stats: BTreeMap::from([
                ("mean_log_z".to_string(), m),
                ("mean_log_z_se".to_string(), se),
                ("expected".to_string(), want),
                ("mean_per_step".to_string(), mean(&logs) / (2 * n) as f64),
            ]),
        });
        rep.verdicts.push(Verdict::new(
            &format!("stationary log Z mean at ({n}, {n})"),
            within_se(m, want, se, 4.0),
            format!("{m:.4} vs {want:.4}, se {se:.3}"),
        ));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_suite_passes() {
        let mut cfg = identities_default_config();
        cfg.replicas = 10;
        cfg.params.insert("triples".into(), 500.0);
        cfg.params.insert("crossing_instances".into(), 20.0);
        let r = run_identity_suite(&cfg).unwrap();
        assert!(r.passed(), "{:?}", r.verdicts);
    }

    #[test]
    fn inequality_checks_are_clean() {
        let mut total = InequalityCounts::default();
        for s in 0..20 {
            total.add(&inequality_checks(8, &mut RngStream::new(5, s)).unwrap());
        }
        assert_eq!(InequalityCounts { checks: total.checks, ..Default::default() }, total);
        assert!(total.checks > 20 * 1000);
        assert!(!log_le(0.1, 0.0, 10.0));
        assert!(log_le(1e-12, 0.0, 10.0));
    }

    #[test]
    fn small_inequality_and_coupling_runs() {
        let mut cfg = inequalities_default_config();
        cfg.replicas = 30;
        cfg.params.insert("sandwich_replicas".into(), 2.0);
        assert!(run_inequality_suite(&cfg).unwrap().passed());
        let mut cfg = couplings_default_config();
        cfg.replicas = 30;
        assert!(run_coupling_suite(&cfg).unwrap().passed());
    }

    #[test]
    fn moment_suite_passes() {
        let mut cfg = moments_default_config();
        cfg.replicas = 2000;
        cfg.params.insert("draws".into(), 20_000.0);
        let r = run_moment_suite(&cfg).unwrap();
        assert!(r.passed(), "{:?}", r.verdicts);
        cfg.params.insert("alpha".into(), 1.5);
        assert!(run_moment_suite(&cfg).is_err());
    }
}
