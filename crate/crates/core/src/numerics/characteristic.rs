use serde::{Deserialize, Serialize};

use super::special::{tetragamma, trigamma};
use crate::error::{domain, Result};

/// Direction `(ξ₁, 1 − ξ₁)` in the segment between `e₂` and `e₁`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    xi1: f64,
}

impl Direction {
    pub fn new(xi1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&xi1) {
            return domain(format!("direction coordinate {xi1} outside [0,1]"));
        }
        Ok(Direction { xi1 })
    }

    /// Direction of a vector with nonnegative (or nonpositive) coordinates.
    pub fn from_vector(a: f64, b: f64) -> Result<Self> {
        let s = a + b;
        if s == 0.0 || a / s < 0.0 || b / s < 0.0 {
            return domain(format!("({a}, {b}) does not define a direction"));
        }
        Direction::new(a / s)
    }

    pub fn xi1(self) -> f64 {
        self.xi1
    }

    pub fn xi2(self) -> f64 {
        1.0 - self.xi1
    }
}

/// Parameter in the open interval (0, 1).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ParamRho {
    rho: f64,
}

impl ParamRho {
    pub fn new(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return domain(format!("parameter {rho} outside (0,1)"));
        }
        Ok(ParamRho { rho })
    }

    pub fn value(self) -> f64 {
        self.rho
    }
}

pub fn characteristic_direction(rho: ParamRho) -> Direction {
    let r = rho.value();
    let a = trigamma(r).expect("rho in (0,1)");
    let b = trigamma(1.0 - r).expect("rho in (0,1)");
    Direction { xi1: a / (a + b) }
}

/// Inverse of [`characteristic_direction`] by bisection on
/// `ξ₂ψ₁(ρ) − ξ₁ψ₁(1−ρ)`, which is decreasing in ρ.
pub fn characteristic_parameter(xi: Direction) -> Result<ParamRho> {
    let (x1, x2) = (xi.xi1(), xi.xi2());
    if !(x1 > 0.0 && x1 < 1.0) {
        return domain(format!("boundary direction xi1 = {x1} has no parameter"));
    }
    let g = |r: f64| x2 * trigamma(r).unwrap() - x1 * trigamma(1.0 - r).unwrap();
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ParamRho::new(0.5 * (lo + hi))
}

fn slope(r: f64) -> f64 {
    trigamma(1.0 - r).unwrap() / trigamma(r).unwrap()
}

/// `ξ₂(ρ₀+δ)/ξ₁(ρ₀+δ) − ξ₂(ρ₀)/ξ₁(ρ₀)`.
pub fn slope_increment(rho0: ParamRho, delta: f64) -> Result<f64> {
    let r = rho0.value();
    if !(delta.abs() < 0.5 * r.min(1.0 - r)) {
        return domain(format!("|delta| = {} too large for rho0 = {r}", delta.abs()));
    }
    Ok(slope(r + delta) - slope(r))
}

/// Linear coefficient φ(ρ₀) of [`slope_increment`], from the analytic derivative.
pub fn slope_coefficient(rho0: ParamRho) -> f64 {
    let r = rho0.value();
    let (a, b) = (trigamma(r).unwrap(), trigamma(1.0 - r).unwrap());
    let (da, db) = (tetragamma(r).unwrap(), tetragamma(1.0 - r).unwrap());
    -(db * a + da * b) / (a * a)
}
