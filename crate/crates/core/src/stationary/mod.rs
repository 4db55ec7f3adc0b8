//! Burke-type machinery: sequence operators, the involution, half-line
//! boundaries, stationary quadrants and the jointly stationary pair.

mod dd;
mod half_line;
mod involution;
mod joint;
mod quadrant;
mod sequence;

pub use dd::dd_identity_residual;
pub use half_line::{
    adaptive_depth, d_operator, half_line_boundary, r_operator, s_operator, HalfLineOutput, MAX_DEPTH,
};
pub use involution::{apply_involution, theta_log};
pub use joint::{build_joint_pair, JointStationaryPair};
pub use quadrant::{build_stationary_quadrant, StationaryQuadrant};
pub use sequence::{RatioKind, RatioSeq};
