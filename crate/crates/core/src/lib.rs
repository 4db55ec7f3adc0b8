//! Simulation and verification laboratory for the planar inverse-gamma
//! (log-gamma) directed polymer.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: log-domain arithmetic, digamma/trigamma, incomplete gamma,
//!   and the characteristic-direction calculus.
//! - [`environment`]: counter-based random streams, gamma samplers, seeded
//!   weight fields and boundary weights.
//! - [`polymer`]: partition-function grids, quenched path measures, path
//!   sampling, exit times, crossing probabilities, Gibbs resampling.
//! - [`stationary`]: the sequence operators D/S/R, the involution, half-line
//!   boundaries, stationary quadrants and the jointly stationary pair.
//! - [`couplings`]: tree couplings, path order, ratio walks, crossing bounds
//!   and sandwich checks.
//! - [`experiments`]: statistics, configuration, reports, and the Monte Carlo
//!   experiment runners behind the `polymer-lab` binary.

pub mod couplings;
pub mod environment;
pub mod error;
pub mod experiments;
pub mod lattice;
pub mod numerics;
pub mod polymer;
pub mod stationary;

pub use error::{Error, Result};
pub use lattice::{Rect, Vertex};
