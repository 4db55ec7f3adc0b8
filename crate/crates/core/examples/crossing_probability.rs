//! Where a polymer crosses the y-axis, and the ratio-walk bound on the
//! probability of crossing at the origin.

use polymer_lab::couplings::crossing_bound_check;
use polymer_lab::environment::make_bulk_field;
use polymer_lab::experiments::sup_crossing_probability;
use polymer_lab::experiments::crossing::{coarse_grid, northeast_boundary, southwest_boundary};
use polymer_lab::polymer::edge_crossing_probs;
use polymer_lab::{Rect, Result, Vertex};

fn main() -> Result<()> {
    let n = 32;
    let field = make_bulk_field(Rect::from_coords(-n, -n, n, n)?, 1.0, 3)?;
    let (u, v) = (Vertex::new(-n, -n), Vertex::new(n, n));
    let d = edge_crossing_probs(&field, u, v)?;
    let (mode, pm) = (d.lo..=d.hi()).map(|i| (i, d.prob(i))).fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    println!("corner to corner: total {:.12}, p_0 = {:.4}, most likely row {mode} ({pm:.4})", d.total(), d.prob(0));
    println!("ratio-walk bound holds: {}", crossing_bound_check(&field, u, v)?);

    let us = coarse_grid(&southwest_boundary(n, 0.5), 10);
    let vs = northeast_boundary(n, 0.5);
    let (sup, a, b) = sup_crossing_probability(&field, &us, &vs)?;
    println!("sup over {} x {} boundary pairs: {sup:.4} at {a} -> {b}", us.len(), vs.len());
    Ok(())
}
