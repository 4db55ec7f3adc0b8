//! Log-domain partition-function grids.

use serde::{Deserialize, Serialize};

use crate::environment::WeightField;
use crate::error::{geometry, Result};
use crate::lattice::{Rect, Vertex, E1, E2};
use crate::numerics::{lse, LogValue};

/// Whether the weight at the base vertex counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Convention {
    /// `Z_{o,p}` includes `Y_o`.
    WithBaseWeight,
    /// `Z_{o,o} = 1`; the weight at `o` does not count.
    UnitBase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// Up-right paths from the base.
    Forward,
    /// Down-left paths from the base.
    Backward,
}

/// `log Z_{base, x}` over a rectangle; `-∞` outside it.
#[derive(Clone, Debug, PartialEq)]
pub struct LogZGrid {
    base: Vertex,
    orientation: Orientation,
    convention: Convention,
    rect: Rect,
    logz: Vec<f64>,
}

impl LogZGrid {
    pub(crate) fn from_parts(base: Vertex, orientation: Orientation, convention: Convention, rect: Rect, logz: Vec<f64>) -> Self {
        debug_assert_eq!(rect.len(), logz.len());
        LogZGrid { base, orientation, convention, rect, logz }
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    pub fn values(&self) -> &[f64] {
        &self.logz
    }

    #[inline]
    pub fn logz(&self, v: Vertex) -> f64 {
        match self.rect.index_checked(v) {
            Some(i) => self.logz[i],
            None => f64::NEG_INFINITY,
        }
    }

    pub fn logz_value(&self, v: Vertex) -> LogValue {
        LogValue(self.logz(v))
    }
}

fn base_log(field: &WeightField, o: Vertex, convention: Convention) -> f64 {
    match convention {
        Convention::WithBaseWeight => field.log_weight(o),
        Convention::UnitBase => 0.0,
    }
}

/// Forward grid on `⟦o, field.hi⟧` via `Z_x = (Z_{x−e₁} + Z_{x−e₂})·Y_x`.
pub fn log_partition_forward(field: &WeightField, o: Vertex, convention: Convention) -> Result<LogZGrid> {
    let fr = field.rect();
    if !fr.contains(o) {
        return geometry(format!("base {o} outside field {fr}"));
    }
    let rect = Rect { lo: o, hi: fr.hi };
    let (w, h) = (rect.width(), rect.height());
    let fw = field.log_weights();
    let mut logz = vec![0.0; w * h];
    for j in 0..h {
        let frow = fr.index(Vertex::new(o.x, o.y + j as i64));
        let weights = &fw[frow..frow + w];
        let (done, rest) = logz.split_at_mut(j * w);
        let cur = &mut rest[..w];
        if j == 0 {
            cur[0] = base_log(field, o, convention);
            for i in 1..w {
                cur[i] = weights[i] + cur[i - 1];
            }
        } else {
            let prev = &done[(j - 1) * w..];
            cur[0] = weights[0] + prev[0];
            for i in 1..w {
                cur[i] = weights[i] + lse(cur[i - 1], prev[i]);
            }
        }
    }
    Ok(LogZGrid { base: o, orientation: Orientation::Forward, convention, rect, logz })
}

/// Backward grid on `⟦field.lo, o⟧` over down-left paths from `o`.
pub fn log_partition_backward(field: &WeightField, o: Vertex, convention: Convention) -> Result<LogZGrid> {
    let fr = field.rect();
    if !fr.contains(o) {
        return geometry(format!("base {o} outside field {fr}"));
    }
    let rect = Rect { lo: fr.lo, hi: o };
    let (w, h) = (rect.width(), rect.height());
    let fw = field.log_weights();
    let mut logz = vec![0.0; w * h];
    for j in (0..h).rev() {
        let frow = fr.index(Vertex::new(fr.lo.x, fr.lo.y + j as i64));
        let weights = &fw[frow..frow + w];
        let (head, tail) = logz.split_at_mut((j + 1) * w);
        let cur = &mut head[j * w..];
        if j == h - 1 {
            cur[w - 1] = base_log(field, o, convention);
            for i in (0..w - 1).rev() {
                cur[i] = weights[i] + cur[i + 1];
            }
        } else {
            let next = &tail[..w];
            cur[w - 1] = weights[w - 1] + next[w - 1];
            for i in (0..w - 1).rev() {
                cur[i] = weights[i] + lse(cur[i + 1], next[i]);
            }
        }
    }
    Ok(LogZGrid { base: o, orientation: Orientation::Backward, convention, rect, logz })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExitSide {
    /// Paths with `τ ≥ k` (leave the e₁-axis at or beyond `o + k·e₁`).
    Horizontal,
    /// Paths with `τ ≤ −k`.
    Vertical,
}

/// `log Z_{o,x}(τ_{o,x} ≥ k)` or `log Z_{o,x}(τ_{o,x} ≤ −k)` for
/// `x ∈ o + ℤ²_{>0}`.
#[derive(Clone, Debug)]
pub struct ExitTailGrid {
    base: Vertex,
    offset: f64,
    inner: LogZGrid,
}

impl ExitTailGrid {
    pub fn logz(&self, x: Vertex) -> f64 {
        assert!(self.base.lt(x), "restricted partition needs {x} strictly above-right of {}", self.base);
        self.offset + self.inner.logz(x)
    }
}

/// Restricted partition functions by exit side: a path with `τ ≥ k` passes
/// through `c = o + k·e₁` along the axis, so `Z(τ ≥ k) = Z_{o,c} · Z^{unit}_{c,x}`.
pub fn log_partition_exit_tail(
    field: &WeightField,
    o: Vertex,
    convention: Convention,
    side: ExitSide,
    k: i64,
) -> Result<ExitTailGrid> {
    if k < 1 {
        return geometry(format!("exit threshold must be at least 1, got {k}"));
    }
    let e = match side {
        ExitSide::Horizontal => E1,
        ExitSide::Vertical => E2,
    };
    let c = o + k * e;
    if !field.rect().contains(c) || !field.rect().contains(o) {
        return geometry(format!("threshold point {c} outside field {}", field.rect()));
    }
    let mut offset = base_log(field, o, convention);
    for i in 1..=k {
        offset += field.log_weight(o + i * e);
    }
    let inner = log_partition_forward(field, c, Convention::UnitBase)?;
    Ok(ExitTailGrid { base: o, offset, inner })
}
