//! Partition functions on a random environment, a sampled path and its
//! quenched probability.

use polymer_lab::environment::{make_bulk_field, RngStream};
use polymer_lab::polymer::{log_partition_forward, quenched_path_log_prob, sample_path, Convention};
use polymer_lab::{Rect, Result, Vertex};

fn main() -> Result<()> {
    let rect = Rect::from_coords(0, 0, 31, 31)?;
    let field = make_bulk_field(rect, 1.0, 7)?;
    let grid = log_partition_forward(&field, rect.lo, Convention::WithBaseWeight)?;
    for k in [4, 8, 16, 31] {
        let p = Vertex::new(k, k);
        println!("log Z(0, {p}) = {:.4}   per step {:.4}", grid.logz(p), grid.logz(p) / (2 * k) as f64);
    }

    let mut rng = RngStream::new(7, 1);
    let path = sample_path(&grid, rect.hi, &mut rng)?;
    let q = quenched_path_log_prob(&grid, &field, &path)?;
    let mid = path.at_level(rect.hi.level() / 2).unwrap();
    println!("sampled path of {} vertices, midpoint {mid}, log Q = {:.3}", path.len(), q.0);
    Ok(())
}
