//! Stationary sandwich of bulk ratios on the y-axis, checked on one
//! realization of the square `⟦−N, N⟧²`.
//!
//! Southwest side: a block of boundary points around `o`, its minimal point
//! `o_c`, and a joint stationary pair at `o_c` with parameters
//! `ρ(o_c) ∓ r N^{−1/3}`. The environment carries the pair's `η` on the axes
//! through `o_c`. Northeast side: the same construction on the environment
//! reflected through the origin, with the target column `x = −1`.

use serde::{Deserialize, Serialize};

use crate::environment::{make_bulk_field, RngStream, WeightField};
use crate::error::{geometry, Result};
use crate::lattice::{Rect, Vertex, E1, E2, ORIGIN};
use crate::numerics::{characteristic_parameter, Direction};
use crate::polymer::{log_partition_exit_tail, log_partition_forward, Convention, ExitSide};
use crate::stationary::{build_joint_pair, JointStationaryPair};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichConfig {
    pub n: i64,
    pub eps: f64,
    /// Southwest boundary point; defaults to `(−N, −⌊3N/4⌋)`.
    pub o: Option<Vertex>,
    /// Northeast boundary point; defaults to `−o`.
    pub o_hat: Option<Vertex>,
    pub y: f64,
    /// Perturbed parameters are clamped into `[margin, 1 − margin]`.
    pub rho_margin: f64,
}

impl SandwichConfig {
    pub fn new(n: i64) -> Self {
        SandwichConfig {
            n,
            eps: 0.5,
            o: None,
            o_hat: None,
            y: (std::f64::consts::SQRT_2 - 1.0) / std::f64::consts::SQRT_2,
            rho_margin: 0.05,
        }
    }

    fn sw_point(&self) -> Vertex {
        self.o.unwrap_or(Vertex::new(-self.n, -(3 * self.n) / 4))
    }

    fn ne_point(&self) -> Vertex {
        self.o_hat.unwrap_or(-self.sw_point())
    }
}

/// One side of the sandwich: bulk and stationary `log Z` on the target
/// column over rows `[−K, K]`, the event, and the ratio-product bound
/// violations.
#[derive(Clone, Debug)]
pub struct SideBounds {
    pub base: Vertex,
    pub block: Vec<Vertex>,
    pub event: bool,
    /// Number of `(u, n)` at which some `m < n` breaks a product bound.
    pub violations: usize,
    pub bulk: Vec<Vec<f64>>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub n: i64,
    pub k: i64,
    pub o_c: Vertex,
    pub o_hat_c: Vertex,
    pub rho: (f64, f64),
    pub lambda: (f64, f64),
    pub clamped: bool,
    pub ordering_ok: bool,
    pub event_a: bool,
    pub event_b: bool,
    /// Bound violations counted only when the corresponding event holds.
    pub aod1_violations: usize,
    pub bod1_violations: usize,
    pub sw5_violations: usize,
    /// Violations regardless of the events, for information.
    pub aod1_unconditional: usize,
    pub bod1_unconditional: usize,
    pub sw5_checked: usize,
}

impl SandwichReport {
    pub fn clean(&self) -> bool {
        self.ordering_ok && self.aod1_violations == 0 && self.bod1_violations == 0 && self.sw5_violations == 0
    }
}

/// `⌊N^p⌋`, robust to rounding at perfect powers.
pub(crate) fn scale_floor(n: i64, p: f64) -> i64 {
    ((n as f64).powf(p) * (1.0 + 1e-12)).floor() as i64
}

fn on_sw_boundary(n: i64, eps: f64, u: Vertex) -> bool {
    let top = -(eps * n as f64).ceil() as i64;
    (u.x == -n && u.y >= -n && u.y <= top) || (u.y == -n && u.x >= -n && u.x <= top)
}

/// Points of the southwest boundary within L1 distance `half` of `o`, and
/// their coordinatewise minimum.
fn block_and_min(n: i64, eps: f64, o: Vertex, half: f64) -> Result<(Vec<Vertex>, Vertex)> {
    if !on_sw_boundary(n, eps, o) {
        return geometry(format!("{o} is not on the southwest boundary for N={n}, eps={eps}"));
    }
    let top = -(eps * n as f64).ceil() as i64;
    let mut block: Vec<Vertex> = (-n..=top)
        .map(|y| Vertex::new(-n, y))
        .chain((-n + 1..=top).map(|x| Vertex::new(x, -n)))
        .filter(|&u| ((u - o).l1() as f64) <= half)
        .collect();
    block.sort_by_key(|u| (u.x, u.y));
    let c = Vertex::new(block.iter().map(|u| u.x).min().unwrap(), block.iter().map(|u| u.y).min().unwrap());
    if !block.contains(&c) {
        return geometry(format!("block around {o} has no minimal point"));
    }
    Ok((block, c))
}

fn perturbed(o_c: Vertex, n: i64, margin: f64) -> Result<(f64, f64, f64, bool)> {
    let rho = characteristic_parameter(Direction::from_vector(-o_c.x as f64, -o_c.y as f64)?)?.value();
    let nf = n as f64;
    let shift = nf.powf(2.0 / 15.0) * nf.powf(-1.0 / 3.0);
    let (lo, hi) = (rho - shift, rho + shift);
    let (clo, chi) = (lo.max(margin), hi.min(1.0 - margin));
    Ok((rho, clo, chi, clo != lo || chi != hi))
}

/// Bulk and stationary partition functions from the block to the column
/// `target_col`, the exit event at `threshold`, and violations of
/// `(1−y) Π J^{upper} ≤ Π J^u ≤ (1−y)⁻¹ Π J^{lower}` over `m < n` in `[−k, k]`.
pub fn side_bounds(
    field: &WeightField,
    pair: &JointStationaryPair,
    block: &[Vertex],
    target_col: i64,
    k: i64,
    threshold: f64,
    y: f64,
) -> Result<SideBounds> {
    let base = pair.base();
    let rect = Rect::new(base, Vertex::new(target_col, k))?;
    if base.y >= -k || !pair.lower().rect().contains_rect(&rect) {
        return geometry(format!("pair at {base} does not cover {rect}"));
    }
    let sub = field.sub_field(rect)?;
    let rows = || (-k..=k).map(|r| Vertex::new(target_col, r));
    let mut bulk = Vec::with_capacity(block.len());
    for &u in block {
        if !base.le(u) {
            return geometry(format!("block point {u} below the base {base}"));
        }
        let g = log_partition_forward(&sub, u, Convention::UnitBase)?;
        bulk.push(rows().map(|x| g.logz(x)).collect::<Vec<_>>());
    }
    let lower: Vec<f64> = rows().map(|x| pair.lower().logz().logz(x)).collect();
    let upper: Vec<f64> = rows().map(|x| pair.upper().logz().logz(x)).collect();

    let ln1y = (1.0 - y).ln();
    let kk = threshold.floor() as i64 + 1;
    let event_side = |q: &crate::stationary::StationaryQuadrant, side: ExitSide, totals: &[f64]| -> Result<bool> {
        let e = if side == ExitSide::Horizontal { E1 } else { E2 };
        if !q.rect().contains(base + kk * e) {
            return Ok(false);
        }
        let t = log_partition_exit_tail(q.composite_field(), base, Convention::UnitBase, side, kk)?;
        Ok(rows().zip(totals).all(|(x, &z)| t.logz(x) - z >= ln1y))
    };
    let event = event_side(pair.lower(), ExitSide::Vertical, &lower)? && event_side(pair.upper(), ExitSide::Horizontal, &upper)?;

    let scale = 1.0 + bulk.iter().flatten().chain(&lower).chain(&upper).fold(0.0f64, |a, &b| a.max(b.abs()));
    let slack = 1e-12 * scale;
    let mut violations = 0;
    for g in &bulk {
        let (mut min_d, mut max_e) = (f64::INFINITY, f64::NEG_INFINITY);
        for (i, &z) in g.iter().enumerate() {
            let d = z - lower[i];
            let e = z - upper[i];
            if i > 0 && (d - min_d > -ln1y + slack || e - max_e < ln1y - slack) {
                violations += 1;
            }
            min_d = min_d.min(d);
            max_e = max_e.max(e);
        }
    }
    Ok(SideBounds { base, block: block.to_vec(), event, violations, bulk, lower, upper })
}

fn write_eta(field: &mut WeightField, pair: &JointStationaryPair, target_col: i64, k: i64, map: impl Fn(Vertex) -> Vertex) -> Result<()> {
    let b = pair.base();
    let eta = pair.eta();
    for i in 1..=(target_col - b.x) {
        field.set_log_weight(map(b + i * E1), eta.horizontal.log_at(i))?;
    }
    for j in 1..=(k - b.y) {
        field.set_log_weight(map(b + j * E2), eta.vertical.log_at(j))?;
    }
    Ok(())
}

/// One realization: both sides, both events, and the two-sided walk
/// sandwich `(1−y)² W' ≤ W^{u,v} ≤ (1−y)⁻² W` for `n < 0` and
/// `(1−y)² W ≤ W^{u,v} ≤ (1−y)⁻² W'` for `n > 0`, over all block pairs.
pub fn sandwich_check(cfg: &SandwichConfig, rng: &mut RngStream) -> Result<SandwichReport> {
    let n = cfg.n;
    let nf = n as f64;
    let k = scale_floor(n, 2.0 / 3.0);
    let d1 = 1.0;
    let d2 = nf.powf(1.0 / 8.0);
    let (block_sw, o_c) = block_and_min(n, cfg.eps, cfg.sw_point(), 0.5 * d1 * nf.powf(2.0 / 3.0))?;
    let (block_ne, ne_base) = block_and_min(n, cfg.eps, -cfg.ne_point(), 0.5 * d2 * nf.powf(2.0 / 3.0))?;
    if o_c.y >= -k - 1 || ne_base.y >= -k - 1 {
        return geometry(format!("N={n} too small for the window of half-width {k}"));
    }
    let (_, rho_lo, rho_hi, c1) = perturbed(o_c, n, cfg.rho_margin)?;
    let (_, lam_lo, lam_hi, c2) = perturbed(ne_base, n, cfg.rho_margin)?;

    let square = Rect::from_coords(-n, -n, n, n)?;
    let env = make_bulk_field(square, 1.0, rng.derive(3).next_u64())?;
    let env_r = env.reflect(ORIGIN);
    let sw = build_joint_pair(o_c, rho_lo, rho_hi, 1.0, Rect::new(o_c, Vertex::new(0, k))?, &env, &mut rng.derive(1))?;
    let ne = build_joint_pair(ne_base, lam_lo, lam_hi, 1.0, Rect::new(ne_base, Vertex::new(-1, k))?, &env_r, &mut rng.derive(2))?;

    let mut env2 = env;
    write_eta(&mut env2, &sw, 0, k, |v| v)?;
    write_eta(&mut env2, &ne, -1, k, |v| -v)?;
    let a = side_bounds(&env2, &sw, &block_sw, 0, k, d1 * nf.powf(2.0 / 3.0), cfg.y)?;
    let b = side_bounds(&env2.reflect(ORIGIN), &ne, &block_ne, -1, k, d2 * nf.powf(2.0 / 3.0), cfg.y)?;

    // log W_n = (G(n) − G(0)) + (Ĝ(n) − Ĝ(0)), Ĝ(i) = reflected log Z at row −i
    let mid = k as usize;
    let idx = |r: i64| (r + k) as usize;
    let sw_rel = |g: &[f64], r: i64| g[idx(r)] - g[mid];
    let ne_rel = |g: &[f64], r: i64| g[idx(-r)] - g[mid];
    let c = -2.0 * (1.0 - cfg.y).ln();
    let scale = 1.0
        + a.bulk.iter().chain(&b.bulk).flatten().fold(0.0f64, |m, &x| m.max(x.abs()));
    let slack = 1e-12 * scale;
    let mut sw5 = 0;
    let mut checked = 0;
    for gu in &a.bulk {
        for gv in &b.bulk {
            for r in (-k..=k).filter(|&r| r != 0) {
                let w = sw_rel(gu, r) + ne_rel(gv, r);
                let w_prime = sw_rel(&a.lower, r) + ne_rel(&b.upper, r);
                let w_plain = sw_rel(&a.upper, r) + ne_rel(&b.lower, r);
                let (lo, hi) = if r < 0 { (w_prime, w_plain) } else { (w_plain, w_prime) };
                checked += 1;
                if w < lo - c - slack || w > hi + c + slack {
                    sw5 += 1;
                }
            }
        }
    }
    let both = a.event && b.event;
    Ok(SandwichReport {
        n,
        k,
        o_c,
        o_hat_c: -ne_base,
        rho: (rho_lo, rho_hi),
        lambda: (lam_lo, lam_hi),
        clamped: c1 || c2,
        ordering_ok: sw.ordering_holds() && ne.ordering_holds(),
        event_a: a.event,
        event_b: b.event,
        aod1_violations: if a.event { a.violations } else { 0 },
        bod1_violations: if b.event { b.violations } else { 0 },
        sw5_violations: if both { sw5 } else { 0 },
        aod1_unconditional: a.violations,
        bod1_unconditional: b.violations,
        sw5_checked: checked,
    })
}
