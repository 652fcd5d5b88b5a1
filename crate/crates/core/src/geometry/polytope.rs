use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::angles::intrinsic_volume_exact;
use super::hull::wrap;
use super::lattice::FaceLattice;
use super::linalg::{affine_dim, convex_polygon, polygon_area};
use super::measure::{measure, Measures};
use super::Point;
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct Facet {
    /// outward unit normal
    pub normal: Point,
    /// the facet hyperplane is `⟨normal, x⟩ = offset`
    pub offset: f64,
    pub vertex_ids: Vec<usize>,
}

/// A full-dimensional polytope stored by its extreme points and facets.
#[derive(Debug)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    tol: f64,
    lattice: OnceLock<FaceLattice>,
    measures: OnceLock<Measures>,
}

impl Clone for VPolytope {
    fn clone(&self) -> Self {
        VPolytope {
            dim: self.dim,
            vertices: self.vertices.clone(),
            facets: self.facets.clone(),
            tol: self.tol,
            lattice: self.lattice.clone(),
            measures: self.measures.clone(),
        }
    }
}

impl VPolytope {
    /// Convex hull of `points`; non-extreme input points are discarded.
    pub fn convex_hull(points: &[Point], tol: f64) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::DegenerateInput("empty point set".into()));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::UnsupportedDimension(0));
        }
        if points.iter().any(|p| p.len() != dim || p.iter().any(|x| !x.is_finite())) {
            return Err(Error::DegenerateInput("points must be finite and of equal length".into()));
        }
        let mut unique: Vec<usize> = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if !unique.iter().any(|&u| (&points[u] - p).amax() <= tol) {
                unique.push(i);
            }
        }
        if unique.len() < dim + 1 {
            return Err(Error::DegenerateInput(format!(
                "{} distinct points cannot span {dim} dimensions",
                unique.len()
            )));
        }
        let cloud: Vec<Point> = unique.iter().map(|&i| points[i].clone()).collect();
        let all: Vec<usize> = (0..cloud.len()).collect();
        let found = affine_dim(&cloud, &all, tol);
        if found < dim {
            return Err(Error::DegenerateInput(format!(
                "points span only {found} of {dim} dimensions"
            )));
        }
        let raw = wrap(&cloud, tol)?;
        let mut keep: Vec<usize> = raw.iter().flat_map(|f| f.vertices.iter().copied()).collect();
        keep.sort_unstable();
        keep.dedup();
        let mut new_id = vec![usize::MAX; cloud.len()];
        for (n, &old) in keep.iter().enumerate() {
            new_id[old] = n;
        }
        let vertices: Vec<Point> = keep.iter().map(|&i| cloud[i].clone()).collect();
        let facets: Vec<Facet> = raw
            .into_iter()
            .map(|f| {
                let mut ids: Vec<usize> = f.vertices.iter().map(|&v| new_id[v]).collect();
                ids.sort_unstable();
                Facet {
                    normal: f.normal,
                    offset: f.offset,
                    vertex_ids: ids,
                }
            })
            .collect();
        Ok(Self::from_parts(vertices, facets, tol))
    }

    /// Assemble from already consistent vertices and facets; facets are put in
    /// lexicographic order of their vertex sets.
    pub fn from_parts(vertices: Vec<Point>, mut facets: Vec<Facet>, tol: f64) -> Self {
        facets.sort_by(|a, b| a.vertex_ids.cmp(&b.vertex_ids));
        VPolytope {
            dim: vertices[0].len(),
            vertices,
            facets,
            tol,
            lattice: OnceLock::new(),
            measures: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| {
            let sets: Vec<Vec<usize>> = self.facets.iter().map(|f| f.vertex_ids.clone()).collect();
            FaceLattice::build(&self.vertices, &sets, self.tol)
        })
    }

    pub fn fvector(&self) -> Vec<usize> {
        self.lattice().fvector()
    }

    fn measures(&self) -> &Measures {
        self.measures.get_or_init(|| measure(&self.vertices, self.lattice()))
    }

    pub fn volume(&self) -> f64 {
        self.measures().volume
    }

    pub fn surface_area(&self) -> f64 {
        self.measures().surface_area
    }

    /// (d-1)-volume of each facet, in facet order.
    pub fn facet_volumes(&self) -> &[f64] {
        &self.measures().facet_volumes
    }

    /// Exact `V_j(P)` when `d - j ≤ 3`, otherwise `None`.
    pub fn intrinsic_volume(&self, j: usize) -> Option<f64> {
        match j {
            0 => Some(1.0),
            j if j == self.dim => Some(self.volume()),
            j if j == self.dim - 1 => Some(0.5 * self.surface_area()),
            _ => {
                let normals: Vec<Point> = self.facets.iter().map(|f| f.normal.clone()).collect();
                intrinsic_volume_exact(&self.vertices, self.lattice(), &normals, j)
            }
        }
    }

    pub fn support(&self, u: &Point) -> f64 {
        self.vertices.iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Distance from the origin to the boundary along `u`.
    pub fn radial(&self, u: &Point) -> Result<f64> {
        self.require_origin_interior()?;
        Ok(self.radial_unchecked(u))
    }

    pub(crate) fn radial_unchecked(&self, u: &Point) -> f64 {
        self.facets
            .iter()
            .filter_map(|f| {
                let c = f.normal.dot(u);
                (c > 0.0).then(|| f.offset / c)
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.facets.iter().all(|f| f.normal.dot(x) <= f.offset + self.tol)
    }

    pub fn min_facet_offset(&self) -> f64 {
        self.facets.iter().map(|f| f.offset).fold(f64::INFINITY, f64::min)
    }

    pub fn max_vertex_norm(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn origin_interior(&self) -> bool {
        self.min_facet_offset() > self.tol
    }

    fn require_origin_interior(&self) -> Result<()> {
        if self.origin_interior() {
            Ok(())
        } else {
            Err(Error::OriginNotInterior)
        }
    }

    /// `P°`: vertex `ξ_F / b_F` per facet `F`, facet `v/‖v‖` at distance `1/‖v‖` per vertex `v`.
    pub fn polar_dual(&self) -> Result<Self> {
        self.require_origin_interior()?;
        let vertices: Vec<Point> = self.facets.iter().map(|f| &f.normal / f.offset).collect();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for (fi, f) in self.facets.iter().enumerate() {
            for &v in &f.vertex_ids {
                incident[v].push(fi);
            }
        }
        let facets = self
            .vertices
            .iter()
            .zip(incident)
            .map(|(v, ids)| {
                let n = v.norm();
                Facet {
                    normal: v / n,
                    offset: 1.0 / n,
                    vertex_ids: ids,
                }
            })
            .collect();
        Ok(Self::from_parts(vertices, facets, self.tol))
    }

    /// Orthogonal projection onto the span of the orthonormal columns of `frame`,
    /// expressed in frame coordinates.
    pub fn project(&self, frame: &DMatrix<f64>) -> Projection {
        if frame.ncols() == self.dim {
            return Projection::Full(self.clone());
        }
        let pts = self.projected_points(frame);
        match VPolytope::convex_hull(&pts, self.tol) {
            Ok(p) => Projection::Full(p),
            Err(_) => Projection::Flat,
        }
    }

    fn projected_points(&self, frame: &DMatrix<f64>) -> Vec<Point> {
        let t = frame.transpose();
        self.vertices.iter().map(|v| &t * v).collect()
    }

    /// `vol_j(P|H)` for the frame's span `H`, with fast paths for `j ≤ 2`.
    pub fn projected_volume(&self, frame: &DMatrix<f64>) -> f64 {
        match frame.ncols() {
            j if j == self.dim => self.volume(),
            1 => {
                let col = frame.column(0);
                let (lo, hi) = self.vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                    let x = v.dot(&col);
                    (lo.min(x), hi.max(x))
                });
                hi - lo
            }
            2 => {
                let (a, b) = (frame.column(0), frame.column(1));
                let pts: Vec<[f64; 2]> = self.vertices.iter().map(|v| [v.dot(&a), v.dot(&b)]).collect();
                let ring = convex_polygon(&pts, 0.0);
                polygon_area(&pts, &ring)
            }
            _ => self.project(frame).volume(),
        }
    }

    pub fn vertex_centroid(&self) -> Point {
        self.vertices.iter().fold(DVector::zeros(self.dim), |a, v| a + v) / self.vertices.len() as f64
    }
}

/// Result of [`VPolytope::project`]; `Flat` marks a lower-dimensional image.
#[derive(Debug, Clone)]
pub enum Projection {
    Full(VPolytope),
    Flat,
}

impl Projection {
    pub fn volume(&self) -> f64 {
        match self {
            Projection::Full(p) => p.volume(),
            Projection::Flat => 0.0,
        }
    }
}

/// Intersection of halfspaces `⟨u_i, x⟩ ≤ b_i`.
#[derive(Debug, Clone, Serialize)]
pub struct HPolytope {
    pub dim: usize,
    pub halfspaces: Vec<(Point, f64)>,
}

impl HPolytope {
    pub fn new(halfspaces: Vec<(Point, f64)>) -> Result<Self> {
        let dim = halfspaces
            .first()
            .map(|h| h.0.len())
            .ok_or_else(|| Error::DegenerateInput("no halfspaces".into()))?;
        Ok(HPolytope { dim, halfspaces })
    }

    /// Vertex form via the polar of `conv(u_i / b_i)`. Needs every `b_i > 0`;
    /// the intersection is bounded iff the origin is interior to that hull.
    pub fn to_vpolytope(&self, tol: f64) -> Result<VPolytope> {
        if self.halfspaces.iter().any(|(_, b)| *b <= tol) {
            return Err(Error::OriginNotInterior);
        }
        let dual: Vec<Point> = self
            .halfspaces
            .iter()
            .map(|(u, b)| u / *b)
            .collect();
        let hull = VPolytope::convex_hull(&dual, tol)
            .map_err(|_| Error::DegenerateInput("halfspace intersection is unbounded".into()))?;
        if !hull.origin_interior() {
            return Err(Error::DegenerateInput("halfspace intersection is unbounded".into()));
        }
        hull.polar_dual()
    }
}
