//! Reproducible random environments: counter-based streams, gamma samplers,
//! seeded weight fields, boundary weights and CDF recoupling.

mod boundary;
mod field;
mod gamma;
mod rng;

pub use boundary::BoundaryWeights;
pub use field::{make_bulk_field, FieldMeta, UniformField, WeightField, BULK_DOMAIN, UNIFORM_DOMAIN};
pub use gamma::{
    inv_gamma_cdf, inv_gamma_cdf_ln_pair, inv_gamma_quantile, monotone_recouple, sample_gamma,
    sample_inverse_gamma, sample_log_gamma, sample_log_inverse_gamma, sample_normal,
};
pub use rng::{mix64, RngStream};
