//! Resampling a segment of a polymer path leaves the path measure
//! unchanged. Compares empirical frequencies with the exact law on 3x3.

use polymer_lab::environment::{make_bulk_field, RngStream};
use polymer_lab::experiments::stats::chi_square_test;
use polymer_lab::polymer::{enumerate_paths, gibbs_resample, log_partition_forward, quenched_path_log_prob, Convention};
use polymer_lab::{Rect, Result};

fn main() -> Result<()> {
    let rect = Rect::from_coords(0, 0, 2, 2)?;
    let field = make_bulk_field(rect, 1.0, 21)?;
    let grid = log_partition_forward(&field, rect.lo, Convention::WithBaseWeight)?;
    let paths = enumerate_paths(rect.lo, rect.hi)?;
    let q: Vec<f64> = paths.iter().map(|p| quenched_path_log_prob(&grid, &field, p).map(|l| l.exp())).collect::<Result<_>>()?;

    // Start from one fixed path and resample the middle over and over.
    let mut rng = RngStream::new(21, 0);
    let mut x = paths[0].clone();
    let mut counts = vec![0u64; paths.len()];
    for _ in 0..50_000 {
        x = gibbs_resample(&x, 0, x.len() - 1, &field, &mut rng)?;
        x = gibbs_resample(&x, 1, 3, &field, &mut rng)?;
        counts[paths.iter().position(|p| *p == x).unwrap()] += 1;
    }
    for ((p, c), w) in paths.iter().zip(&counts).zip(&q) {
        println!("{:?}  observed {:.4}  exact {:.4}", p.steps(), *c as f64 / 50_000.0, w);
    }
    let (stat, dof, pv) = chi_square_test(&counts, &q)?;
    println!("chi-square {stat:.2} on {dof} dof, p = {pv:.3}");
    Ok(())
}
