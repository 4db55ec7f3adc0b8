//! Quenched path probabilities and exact path samplers.

use super::partition::{log_partition_backward, Convention, LogZGrid, Orientation};
use super::path::Path;
use crate::environment::{RngStream, UniformField, WeightField};
use crate::error::{geometry, Result};
use crate::lattice::{Vertex, E1, E2};
use crate::numerics::{lse, LogValue};

/// `log Q_{o,p}(path)` for a path starting at the grid base.
pub fn quenched_path_log_prob(grid: &LogZGrid, field: &WeightField, path: &Path) -> Result<LogValue> {
    if grid.orientation() != Orientation::Forward || path.o() != grid.base() {
        return geometry(format!("path starts at {} but the grid is forward from {}", path.o(), grid.base()));
    }
    if !grid.rect().contains(path.p()) {
        return geometry(format!("endpoint {} outside grid {}", path.p(), grid.rect()));
    }
    let mut s = match grid.convention() {
        Convention::WithBaseWeight => field.log_weight(path.o()),
        Convention::UnitBase => 0.0,
    };
    for &v in &path.vertices()[1..] {
        s += field.log_weight(v);
    }
    Ok(LogValue(s - grid.logz(path.p())))
}

/// Probability that the down-left step from `z` is `−e₁`:
/// `Y_z Z_{o,z−e₁} / Z_{o,z} = Z_{o,z−e₁} / (Z_{o,z−e₁} + Z_{o,z−e₂})`.
#[inline]
pub fn step_prob_e1(grid: &LogZGrid, z: Vertex) -> f64 {
    let a = grid.logz(z - E1);
    let b = grid.logz(z - E2);
    if a == f64::NEG_INFINITY {
        return 0.0;
    }
    (a - lse(a, b)).exp()
}

fn check_target(grid: &LogZGrid, p: Vertex) -> Result<()> {
    if grid.orientation() != Orientation::Forward {
        return geometry("backward sampling needs a forward grid");
    }
    if !grid.base().le(p) || !grid.rect().contains(p) {
        return geometry(format!("endpoint {p} not reachable from {} in {}", grid.base(), grid.rect()));
    }
    Ok(())
}

fn walk_down(grid: &LogZGrid, p: Vertex, mut uniform: impl FnMut(Vertex) -> f64) -> Path {
    let o = grid.base();
    let n = (p - o).l1() as usize;
    let mut vs = Vec::with_capacity(n + 1);
    let mut z = p;
    vs.push(z);
    while z != o {
        z = if z.y == o.y {
            z - E1
        } else if z.x == o.x {
            z - E2
        } else if step_prob_e1(grid, z) >= uniform(z) {
            z - E1
        } else {
            z - E2
        };
        vs.push(z);
    }
    Path::from_down_left(vs).expect("sampler produces admissible steps")
}

/// Exact sample from `Q_{o,p}` by stepping down-left from `p`.
pub fn sample_path(grid: &LogZGrid, p: Vertex, rng: &mut RngStream) -> Result<Path> {
    check_target(grid, p)?;
    Ok(walk_down(grid, p, |_| rng.next_f64()))
}

/// Down-left path from `p` driven by one shared uniform per vertex.
pub fn sample_path_with_uniforms(grid: &LogZGrid, p: Vertex, uniforms: &UniformField) -> Result<Path> {
    check_target(grid, p)?;
    if !uniforms.rect().contains(p) || !uniforms.rect().contains(grid.base()) {
        return geometry("uniform field does not cover the sampling rectangle");
    }
    Ok(walk_down(grid, p, |z| uniforms.get(z)))
}

/// Forward Markov chain for `Q_{o,p}`: from `x` step to `x + eᵢ` with
/// probability `Y_x Z_{x+eᵢ,p} / Z_{x,p}`.
pub fn sample_path_markov(field: &WeightField, o: Vertex, p: Vertex, rng: &mut RngStream) -> Result<Path> {
    if !o.le(p) || !field.rect().contains(o) {
        return geometry(format!("cannot go from {o} to {p}"));
    }
    let back = log_partition_backward(field, p, Convention::WithBaseWeight)?;
    let mut vs = vec![o];
    let mut x = o;
    while x != p {
        x = if x.y == p.y {
            x + E1
        } else if x.x == p.x {
            x + E2
        } else {
            let pe1 = (field.log_weight(x) + back.logz(x + E1) - back.logz(x)).exp();
            if pe1 >= rng.next_f64() {
                x + E1
            } else {
                x + E2
            }
        };
        vs.push(x);
    }
    Path::new(vs)
}
