//! Monotone tree couplings of point-to-point polymers, two-sided ratio
//! walks, the crossing bound and the stationary sandwich around the y-axis.

mod crossing;
mod sandwich;
mod tree;
mod walk;

pub use crossing::crossing_bound_check;
pub use sandwich::{sandwich_check, side_bounds, SandwichConfig, SandwichReport, SideBounds};
pub use tree::{build_step_field, coupled_tree_paths, pair_order, path_order, StepField};
pub use walk::{gamma_log_walk, ratio_walk, TwoSidedWalk};
