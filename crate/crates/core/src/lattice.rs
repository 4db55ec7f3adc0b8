//! Lattice vertices and integer rectangles.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{geometry, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub x: i64,
    pub y: i64,
}

pub const E1: Vertex = Vertex { x: 1, y: 0 };
pub const E2: Vertex = Vertex { x: 0, y: 1 };
pub const ORIGIN: Vertex = Vertex { x: 0, y: 0 };

impl Vertex {
    pub const fn new(x: i64, y: i64) -> Self {
        Vertex { x, y }
    }

    /// Coordinatewise `self ≤ other`.
    pub fn le(self, other: Vertex) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// Coordinatewise strict `self < other`.
    pub fn lt(self, other: Vertex) -> bool {
        self.x < other.x && self.y < other.y
    }

    /// Down-right order: `self.x ≤ other.x` and `self.y ≥ other.y`.
    pub fn preceq(self, other: Vertex) -> bool {
        self.x <= other.x && self.y >= other.y
    }

    pub fn l1(self) -> i64 {
        self.x.abs() + self.y.abs()
    }

    /// Anti-diagonal level `x + y`.
    pub fn level(self) -> i64 {
        self.x + self.y
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Vertex {
    type Output = Vertex;
    fn add(self, o: Vertex) -> Vertex {
        Vertex::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vertex {
    type Output = Vertex;
    fn sub(self, o: Vertex) -> Vertex {
        Vertex::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vertex {
    type Output = Vertex;
    fn neg(self) -> Vertex {
        Vertex::new(-self.x, -self.y)
    }
}

impl Mul<Vertex> for i64 {
    type Output = Vertex;
    fn mul(self, v: Vertex) -> Vertex {
        Vertex::new(self * v.x, self * v.y)
    }
}

/// Inclusive integer rectangle `⟦lo, hi⟧`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub lo: Vertex,
    pub hi: Vertex,
}

impl Rect {
    pub fn new(lo: Vertex, hi: Vertex) -> Result<Self> {
        if !lo.le(hi) {
            return geometry(format!("empty rectangle {lo}..{hi}"));
        }
        Ok(Rect { lo, hi })
    }

    /// Rectangle `⟦(0,0), (w-1, h-1)⟧` style helper from corner coordinates.
    pub fn from_coords(x0: i64, y0: i64, x1: i64, y1: i64) -> Result<Self> {
        Rect::new(Vertex::new(x0, y0), Vertex::new(x1, y1))
    }

    pub fn width(&self) -> usize {
        (self.hi.x - self.lo.x + 1) as usize
    }

    pub fn height(&self) -> usize {
        (self.hi.y - self.lo.y + 1) as usize
    }

    pub fn len(&self) -> usize {
        self.width() * self.height()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.lo.le(v) && v.le(self.hi)
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.contains(other.lo) && self.contains(other.hi)
    }

    /// Row-major index (rows are fixed `y`).
    #[inline]
    pub fn index(&self, v: Vertex) -> usize {
        debug_assert!(self.contains(v));
        (v.y - self.lo.y) as usize * self.width() + (v.x - self.lo.x) as usize
    }

    pub fn index_checked(&self, v: Vertex) -> Option<usize> {
        if self.contains(v) {
            Some(self.index(v))
        } else {
            None
        }
    }

    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        let lo = Vertex::new(self.lo.x.max(other.lo.x), self.lo.y.max(other.lo.y));
        let hi = Vertex::new(self.hi.x.min(other.hi.x), self.hi.y.min(other.hi.y));
        if lo.le(hi) {
            Some(Rect { lo, hi })
        } else {
            None
        }
    }

    /// Point reflection `v ↦ c - v` applied to the rectangle, with `c = 2·center`.
    pub fn reflect(&self, c: Vertex) -> Rect {
        Rect { lo: c - self.hi, hi: c - self.lo }
    }

    /// Vertices in row-major order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let (lo, hi) = (self.lo, self.hi);
        (lo.y..=hi.y).flat_map(move |y| (lo.x..=hi.x).map(move |x| Vertex::new(x, y)))
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let a = Vertex::new(0, 2);
        let b = Vertex::new(2, 0);
        assert!(a.preceq(b));
        assert!(!b.preceq(a));
        assert!(a.preceq(a));
        assert!(Vertex::new(0, 0).le(Vertex::new(0, 3)));
        assert!(!Vertex::new(0, 0).lt(Vertex::new(0, 3)));
    }

    #[test]
    fn rect_indexing_is_row_major() {
        let r = Rect::from_coords(-1, -1, 2, 1).unwrap();
        assert_eq!(r.width(), 4);
        assert_eq!(r.height(), 3);
        let idx: Vec<usize> = r.vertices().map(|v| r.index(v)).collect();
        assert_eq!(idx, (0..12).collect::<Vec<_>>());
        assert!(Rect::from_coords(1, 0, 0, 0).is_err());
    }

    #[test]
    fn reflection_maps_corners() {
        let r = Rect::from_coords(0, 0, 3, 2).unwrap();
        let s = r.reflect(Vertex::new(3, 2));
        assert_eq!(s, r);
        let t = r.reflect(ORIGIN);
        assert_eq!(t, Rect::from_coords(-3, -2, 0, 0).unwrap());
    }
}
