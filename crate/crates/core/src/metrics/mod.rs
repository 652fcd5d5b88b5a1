//! Deviation functionals between a polytope and the unit ball.

pub mod constants;
pub mod deviation;
pub mod intrinsic;
pub mod mc;
pub mod report;
pub mod sampling;
pub mod width;

pub use constants::{ball_constants, BallConstants};
pub use deviation::{
    boundary_mass_outside, boundary_split, hausdorff_ball, sphere_sublevel_fraction, surface_area_deviation,
    symdiff_ball, BoundarySplit, Nesting,
};
pub use intrinsic::{delta_j, delta_sigma, intrinsic_volume, intrinsic_volume_mc};
pub use mc::MCEstimate;
pub use report::{Method, MetricReport, Mode};
pub use width::{mean_width, mean_width_exact, mean_width_exact_lowdim, mean_width_report};
