//! Exact quenched exit-point law of a stationary polymer in the
//! characteristic direction, averaged over a few environments.

use polymer_lab::environment::{make_bulk_field, RngStream};
use polymer_lab::numerics::{characteristic_direction, ParamRho};
use polymer_lab::polymer::{exit_distribution_exact, Convention};
use polymer_lab::stationary::build_stationary_quadrant;
use polymer_lab::{Rect, Result, Vertex};

fn main() -> Result<()> {
    let (alpha, sigma, n) = (0.5, 1.0, 128);
    let xi = characteristic_direction(ParamRho::new(alpha)?);
    let target = Vertex::new((n as f64 * xi.xi1()).round() as i64, (n as f64 * xi.xi2()).round() as i64);
    let rect = Rect::new(Vertex::new(0, 0), target)?;
    let scale = (n as f64).powf(2.0 / 3.0);
    let reps = 50;
    let mut tails = [0.0; 4];
    let (mut right, mut up) = (0.0, 0.0);
    for r in 0..reps {
        let bulk = make_bulk_field(rect, sigma, 500 + r)?;
        let q = build_stationary_quadrant(rect.lo, alpha, sigma, rect, &bulk, &mut RngStream::new(9, r))?;
        let d = exit_distribution_exact(q.composite_field(), rect.lo, rect.lo, target, Convention::UnitBase)?;
        right += d.tail_ge(1);
        up += d.tail_le_neg(1);
        for (b, t) in tails.iter_mut().enumerate() {
            let k = ((b + 1) as f64 * scale).ceil() as i64;
            *t += d.tail_ge(k) + d.tail_le_neg(k);
        }
    }
    let m = reps as f64;
    println!("target {target}, P(exit along e1) = {:.3}, P(exit along e2) = {:.3}", right / m, up / m);
    for (b, t) in tails.iter().enumerate() {
        println!("P(|tau| >= {} N^(2/3)) = {:.4}", b + 1, t / m);
    }
    Ok(())
}
