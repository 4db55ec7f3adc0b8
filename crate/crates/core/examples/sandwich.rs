//! Stationary bounds on bulk ratios near the y-axis, on a few realizations
//! of the square with side 2N.

use polymer_lab::couplings::{sandwich_check, SandwichConfig};
use polymer_lab::environment::RngStream;
use polymer_lab::Result;

fn main() -> Result<()> {
    let cfg = SandwichConfig::new(64);
    let first = sandwich_check(&cfg, &mut RngStream::new(1, 0))?;
    println!(
        "block corner {}, half-width {}, parameters ({:.3}, {:.3}){}",
        first.o_c,
        first.k,
        first.rho.0,
        first.rho.1,
        if first.clamped { " after clamping" } else { "" }
    );
    for r in 0..5 {
        let rep = sandwich_check(&cfg, &mut RngStream::new(1, r))?;
        println!(
            "realization {r}: events ({}, {}), two-sided bounds checked {}, unconditional misses {}, clean {}",
            rep.event_a,
            rep.event_b,
            rep.sw5_checked,
            rep.aod1_unconditional + rep.bod1_unconditional,
            rep.clean()
        );
    }
    Ok(())
}
