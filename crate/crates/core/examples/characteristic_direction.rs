//! The characteristic direction and its inverse, and the log-moments of
//! the inverse-gamma law.

use polymer_lab::numerics::{characteristic_direction, characteristic_parameter, digamma, trigamma, ParamRho};
use polymer_lab::Result;

fn main() -> Result<()> {
    for rho in [0.1, 0.25, 0.5, 0.75, 0.9] {
        let xi = characteristic_direction(ParamRho::new(rho)?);
        let back = characteristic_parameter(xi)?.value();
        println!("rho {rho:.2} -> xi = ({:.4}, {:.4}) -> rho {back:.12}", xi.xi1(), xi.xi2());
    }
    for theta in [0.5, 1.0, 2.0] {
        println!("log Ga^-1({theta}): mean {:.6}, variance {:.6}", -digamma(theta)?, trigamma(theta)?);
    }
    Ok(())
}
