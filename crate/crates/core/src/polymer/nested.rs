//! Partition functions with ratio boundary weights inherited from a grid
//! based further southwest.

use super::partition::{log_partition_forward, Convention, LogZGrid, Orientation};
use crate::environment::WeightField;
use crate::error::{geometry, Result};
use crate::lattice::{Rect, Vertex, E1, E2};

/// Field on `⟦v, w⟧` whose axis weights through `v` are
/// `Y^{(u)}_{v+i·e_r} = Z_{u,v+i·e_r} / Z_{u,v+(i−1)·e_r}` and whose bulk
/// weights are those of `field`. The weight at `v` is set to 1.
pub fn nested_boundary_field(field: &WeightField, grid_u: &LogZGrid, v: Vertex, w: Vertex) -> Result<WeightField> {
    if grid_u.orientation() != Orientation::Forward || !grid_u.base().le(v) || !v.le(w) {
        return geometry(format!("need a forward grid from u <= {v} <= {w}"));
    }
    if !grid_u.rect().contains(w) {
        return geometry(format!("{w} outside grid {}", grid_u.rect()));
    }
    let rect = Rect::new(v, w)?;
    WeightField::from_fn(rect, |z| {
        if z == v {
            0.0
        } else if z.y == v.y {
            grid_u.logz(z) - grid_u.logz(z - E1)
        } else if z.x == v.x {
            grid_u.logz(z) - grid_u.logz(z - E2)
        } else {
            field.log_weight(z)
        }
    })
}

/// `log Z^{(u)}_{v,·}` on `⟦v, w⟧` (unit base at `v`).
pub fn nested_partition(field: &WeightField, grid_u: &LogZGrid, v: Vertex, w: Vertex) -> Result<LogZGrid> {
    let nf = nested_boundary_field(field, grid_u, v, w)?;
    log_partition_forward(&nf, v, Convention::UnitBase)
}
