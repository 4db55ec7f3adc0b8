//! Running maximum of a zero-drift log-gamma walk: the chance it stays
//! below (log N)^2 shrinks with N.

use polymer_lab::environment::RngStream;
use polymer_lab::experiments::walk::max_stays_below;
use polymer_lab::Result;

fn main() -> Result<()> {
    let reps = 2000;
    for n in [100usize, 1_000, 10_000, 100_000] {
        let x = (n as f64).ln().powi(2);
        let mut below = 0;
        for r in 0..reps {
            below += max_stays_below(0.5, 0.5, n, x, &mut RngStream::new(n as u64, r))? as usize;
        }
        println!("N = {n:>6}: P(max <= {x:6.1}) ~ {:.4}", below as f64 / reps as f64);
    }
    Ok(())
}
