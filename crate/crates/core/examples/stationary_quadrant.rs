//! A stationary quadrant: boundary ratios propagate into the bulk with the
//! same law, and the mean of log Z telescopes.

use polymer_lab::environment::{make_bulk_field, RngStream};
use polymer_lab::numerics::digamma;
use polymer_lab::stationary::{apply_involution, build_stationary_quadrant};
use polymer_lab::{Rect, Result, Vertex};

fn main() -> Result<()> {
    let (alpha, sigma) = (0.5, 1.0);
    let rect = Rect::from_coords(0, 0, 10, 10)?;
    let reps = 4000;
    let (mut sum, mut sq, mut inner_j) = (0.0, 0.0, 0.0);
    for r in 0..reps {
        let bulk = make_bulk_field(rect, sigma, 100 + r)?;
        let q = build_stationary_quadrant(rect.lo, alpha, sigma, rect, &bulk, &mut RngStream::new(3, r))?;
        let l = q.logz().logz(rect.hi);
        sum += l;
        sq += l * l;
        inner_j += q.log_j(Vertex::new(6, 6));
    }
    let n = reps as f64;
    let mean = sum / n;
    let se = ((sq / n - mean * mean) / n).sqrt();
    let want = -10.0 * (digamma(sigma - alpha)? + digamma(alpha)?);
    println!("E log Z at (10,10): {mean:.3} +- {se:.3}, exact {want:.3}");
    println!("E log J at (6,6):   {:.3}, exact {:.3}", inner_j / n, -digamma(alpha)?);

    let (i, j, y) = (0.7, 2.3, 1.1);
    let once = apply_involution(i, j, y)?;
    let twice = apply_involution(once.0, once.1, once.2)?;
    println!("involution {:?} -> {:?} -> {:?}", (i, j, y), once, twice);
    Ok(())
}
