//! Stationary quadrant process: boundary weights on the axes through `o`,
//! bulk weights inside, unit weight at `o`.

use crate::environment::{BoundaryWeights, RngStream, WeightField};
use crate::error::{domain, geometry, Result};
use crate::lattice::{Rect, Vertex, E1, E2};
use crate::numerics::lse;
use crate::polymer::{Convention, LogZGrid, Orientation};

#[derive(Clone, Debug)]
pub struct StationaryQuadrant {
    base: Vertex,
    alpha: f64,
    sigma: f64,
    boundary: BoundaryWeights,
    field: WeightField,
    logz: LogZGrid,
}

impl StationaryQuadrant {
    /// Assemble from explicit boundary weights. The boundary must cover the
    /// two axes of `rect` and `bulk` its interior.
    pub fn from_boundary(boundary: BoundaryWeights, alpha: f64, sigma: f64, rect: Rect, bulk: &WeightField) -> Result<Self> {
        let o = boundary.base;
        if rect.lo != o {
            return geometry(format!("quadrant rectangle {rect} must start at the base {o}"));
        }
        let (m, n) = (rect.width() as i64 - 1, rect.height() as i64 - 1);
        let (h, v) = (&boundary.horizontal, &boundary.vertical);
        if m > 0 && !(h.start() <= 1 && h.end() >= m) || n > 0 && !(v.start() <= 1 && v.end() >= n) {
            return geometry(format!("boundary weights do not cover the axes of {rect}"));
        }
        if m > 0 && n > 0 {
            let inner = Rect::new(o + E1 + E2, rect.hi)?;
            if !bulk.rect().contains_rect(&inner) {
                return geometry(format!("bulk field {} does not cover {inner}", bulk.rect()));
            }
        }
        let field = WeightField::from_fn(rect, |z| {
            let d = z - o;
            match (d.x, d.y) {
                (0, 0) => 0.0,
                (i, 0) => h.log_at(i),
                (0, j) => v.log_at(j),
                _ => bulk.log_weight(z),
            }
        })?;
        let logz = direct_recursion(&field, rect);
        Ok(StationaryQuadrant { base: o, alpha, sigma, boundary, field, logz })
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn rect(&self) -> Rect {
        self.field.rect()
    }

    pub fn boundary(&self) -> &BoundaryWeights {
        &self.boundary
    }

    /// Boundary weights on the axes, bulk inside, 1 at the base.
    pub fn composite_field(&self) -> &WeightField {
        &self.field
    }

    /// `log Z^α_{o,·}` with unit base.
    pub fn logz(&self) -> &LogZGrid {
        &self.logz
    }

    /// `log I^α_x = log Z^α_{o,x} − log Z^α_{o,x−e₁}` for `x` with `x₁ > o₁`.
    pub fn log_i(&self, x: Vertex) -> f64 {
        assert!(x.x > self.base.x && self.rect().contains(x), "I ratio undefined at {x}");
        self.logz.logz(x) - self.logz.logz(x - E1)
    }

    /// `log J^α_x = log Z^α_{o,x} − log Z^α_{o,x−e₂}` for `x` with `x₂ > o₂`.
    pub fn log_j(&self, x: Vertex) -> f64 {
        assert!(x.y > self.base.y && self.rect().contains(x), "J ratio undefined at {x}");
        self.logz.logz(x) - self.logz.logz(x - E2)
    }
}

// Axis products followed by the bulk recursion, written out independently of
// the generic DP.
fn direct_recursion(field: &WeightField, rect: Rect) -> LogZGrid {
    let (w, h) = (rect.width(), rect.height());
    let lw = field.log_weights();
    let mut z = vec![0.0; w * h];
    for i in 1..w {
        z[i] = lw[i] + z[i - 1];
    }
    for j in 1..h {
        z[j * w] = lw[j * w] + z[(j - 1) * w];
    }
    for j in 1..h {
        for i in 1..w {
            let k = j * w + i;
            z[k] = lw[k] + lse(z[k - 1], z[k - w]);
        }
    }
    LogZGrid::from_parts(rect.lo, Orientation::Forward, Convention::UnitBase, rect, z)
}

/// Quadrant on `rect = ⟦o, ·⟧` with `I ~ Ga⁻¹(σ−α)` on the horizontal axis,
/// `J ~ Ga⁻¹(α)` on the vertical axis and `bulk` inside.
pub fn build_stationary_quadrant(
    o: Vertex,
    alpha: f64,
    sigma: f64,
    rect: Rect,
    bulk: &WeightField,
    rng: &mut RngStream,
) -> Result<StationaryQuadrant> {
    if !(alpha > 0.0 && alpha < sigma) {
        return domain(format!("need 0 < alpha < sigma, got alpha={alpha}, sigma={sigma}"));
    }
    if rect.lo != o {
        return geometry(format!("quadrant rectangle {rect} must start at {o}"));
    }
    let b = BoundaryWeights::sample(o, alpha, sigma, rect.width() - 1, rect.height() - 1, rng)?;
    StationaryQuadrant::from_boundary(b, alpha, sigma, rect, bulk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::{inv_gamma_cdf, make_bulk_field};
    use crate::numerics::{digamma, EULER_GAMMA};
    use crate::polymer::log_partition_forward;

    fn ks_stat(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
        xs.sort_by(f64::total_cmp);
        let n = xs.len() as f64;
        xs.iter()
            .enumerate()
            .map(|(k, &x)| {
                let f = cdf(x);
                (f - k as f64 / n).max((k + 1) as f64 / n - f)
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn matches_generic_dp_exactly() {
        let rect = Rect::from_coords(3, -2, 15, 9).unwrap();
        let bulk = make_bulk_field(rect, 1.0, 4).unwrap();
        let q = build_stationary_quadrant(rect.lo, 0.3, 1.0, rect, &bulk, &mut RngStream::new(4, 1)).unwrap();
        let g = log_partition_forward(q.composite_field(), rect.lo, Convention::UnitBase).unwrap();
        assert_eq!(g.values(), q.logz().values());
        assert_eq!(q.logz().logz(rect.lo), 0.0);
        for i in 1..rect.width() as i64 {
            let x = rect.lo + i * E1;
            assert!((q.log_i(x) - q.boundary().horizontal.log_at(i)).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_rectangles() {
        let rect = Rect::from_coords(0, 0, 5, 0).unwrap();
        let bulk = WeightField::unit(Rect::from_coords(0, 0, 0, 0).unwrap());
        let q = build_stationary_quadrant(rect.lo, 0.5, 1.0, rect, &bulk, &mut RngStream::new(1, 1)).unwrap();
        assert_eq!(q.logz().values().len(), 6);
        assert!(build_stationary_quadrant(rect.lo, 1.0, 1.0, rect, &bulk, &mut RngStream::new(1, 1)).is_err());
        let big = Rect::from_coords(0, 0, 5, 5).unwrap();
        assert!(build_stationary_quadrant(big.lo, 0.5, 1.0, big, &bulk, &mut RngStream::new(1, 1)).is_err());
    }

    #[test]
    fn stationarity_in_the_bulk() {
        let (alpha, sigma) = (0.5, 1.0);
        let rect = Rect::from_coords(0, 0, 10, 10).unwrap();
        let reps = 10_000;
        let (mut sum, mut sq) = (0.0, 0.0);
        let mut col = Vec::with_capacity(reps);
        let mut row = Vec::with_capacity(reps);
        let (mut pi, mut pj) = (Vec::with_capacity(reps), Vec::with_capacity(reps));
        for r in 0..reps as u64 {
            let bulk = make_bulk_field(rect, sigma, 1000 + r).unwrap();
            let q = build_stationary_quadrant(rect.lo, alpha, sigma, rect, &bulk, &mut RngStream::new(77, r)).unwrap();
            let l = q.logz().logz(rect.hi);
            sum += l;
            sq += l * l;
            col.push(q.log_j(Vertex::new(5, 7)).exp());
            row.push(q.log_i(Vertex::new(7, 5)).exp());
            let v = Vertex::new(4, 6);
            pi.push(q.log_i(v + E1));
            pj.push(q.log_j(v + E2));
        }
        let n = reps as f64;
        let mean = sum / n;
        let se = ((sq / n - mean * mean) / n).sqrt();
        let want = 20.0 * (EULER_GAMMA + 2.0 * std::f64::consts::LN_2);
        assert!((want + 20.0 * digamma(0.5).unwrap()).abs() < 1e-12);
        assert!((mean - want).abs() < 4.0 * se, "mean {mean} want {want} se {se}");
        // 0.001-level KS critical value
        let crit = 1.949 / n.sqrt();
        assert!(ks_stat(col, |x| inv_gamma_cdf(alpha, x).unwrap()) < crit);
        assert!(ks_stat(row, |x| inv_gamma_cdf(sigma - alpha, x).unwrap()) < crit);
        let (mi, mj) = (pi.iter().sum::<f64>() / n, pj.iter().sum::<f64>() / n);
        let cov: f64 = pi.iter().zip(&pj).map(|(a, b)| (a - mi) * (b - mj)).sum::<f64>();
        let vi: f64 = pi.iter().map(|a| (a - mi) * (a - mi)).sum();
        let vj: f64 = pj.iter().map(|b| (b - mj) * (b - mj)).sum();
        assert!((cov / (vi * vj).sqrt()).abs() < 4.0 / n.sqrt());
    }
}
