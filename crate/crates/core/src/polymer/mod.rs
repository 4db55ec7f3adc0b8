//! Point-to-point polymer machinery.

mod crossing;
mod enumerate;
mod exit;
mod gibbs;
mod nested;
mod partition;
mod path;
mod sampling;

pub use crossing::{edge_crossing_probs, CrossingDistribution};
pub use enumerate::{enumerate_paths, MAX_ENUMERATION_STEPS};
pub use exit::{exit_distribution_exact, exit_time, ExitDistribution};
pub use gibbs::gibbs_resample;
pub use nested::{nested_boundary_field, nested_partition};
pub use partition::{
    log_partition_backward, log_partition_exit_tail, log_partition_forward, Convention, ExitSide, ExitTailGrid,
    LogZGrid, Orientation,
};
pub use path::{Path, Step};
pub use sampling::{quenched_path_log_prob, sample_path, sample_path_markov, sample_path_with_uniforms, step_prob_e1};
