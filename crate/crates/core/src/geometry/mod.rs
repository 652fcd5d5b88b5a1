//! Polytopes in vertex form, their faces, duals and measures.

pub mod angles;
pub mod hull;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod measure;
pub mod polytope;

pub use lattice::{check_face_inequalities, Check, FaceInequalities, FaceLattice};
pub use polytope::{Facet, HPolytope, Projection, VPolytope, DEFAULT_TOL};

/// A point of ℝ^d.
pub type Point = nalgebra::DVector<f64>;

/// Build a point from a coordinate slice.
pub fn point(coords: &[f64]) -> Point {
    Point::from_column_slice(coords)
}
