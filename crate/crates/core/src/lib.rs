//! Polytopal approximation of the Euclidean ball: exact and Monte Carlo
//! deviation measures, closed-form lower bounds, generators, a local
//! optimizer and a certification harness tying them together.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod metrics;
pub mod optimizer;

pub use error::{Error, Result};
pub use bounds::BoundValue;
pub use constructions::{generate, Fixture, GenKind, GenSpec};
pub use geometry::{point, FaceLattice, Facet, HPolytope, Point, VPolytope, DEFAULT_TOL};
pub use harness::{CertRow, Status, SweepConfig};
pub use metrics::{BallConstants, MCEstimate, MetricReport};
pub use optimizer::{OptConfig, OptResult};
