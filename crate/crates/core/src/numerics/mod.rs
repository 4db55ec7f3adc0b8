//! Special functions, log-domain arithmetic and the characteristic-direction
//! calculus.

mod characteristic;
mod logspace;
mod special;

pub use characteristic::{
    characteristic_direction, characteristic_parameter, slope_coefficient, slope_increment,
    Direction, ParamRho,
};
pub use logspace::{log_sum_exp, lse, lse_slice, softplus, LogValue};
pub use special::{
    digamma, ln_gamma, ln_regularized_gamma, regularized_gamma, regularized_gamma_p, regularized_gamma_q, tetragamma,
    trigamma, EULER_GAMMA,
};
