//! Facet enumeration by recursive gift wrapping.
//!
//! Each facet is found by pivoting a known facet around one of its ridges.
//! Ridges are the facets of the facet itself, computed by the same routine
//! one dimension down. Points within `tol` of a hyperplane are merged into
//! the same (possibly non-simplicial) facet.

use std::collections::{HashMap, VecDeque};

use nalgebra::DVector;

use super::linalg::{affine_basis, complement_direction, orthonormal_span};
use super::Point;
use crate::error::{Error, Result};

/// A facet of the hull of a point cloud, with indices into the input slice.
#[derive(Debug, Clone)]
pub struct RawFacet {
    pub normal: DVector<f64>,
    pub offset: f64,
    /// every input point lying on the facet hyperplane (within tolerance)
    pub members: Vec<usize>,
    /// extreme points of the facet
    pub vertices: Vec<usize>,
}

/// Facets of `conv(points)`. The points must affinely span their ambient space.
pub fn wrap(points: &[Point], tol: f64) -> Result<Vec<RawFacet>> {
    let dim = points[0].len();
    if dim == 1 {
        return Ok(wrap_line(points, tol));
    }
    let first = initial_facet(points, tol)?;
    let mut facets: Vec<RawFacet> = vec![first];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(facets[0].members.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let ridges = ridges_of(points, &facets[i], tol)?;
        let mut verts: Vec<usize> = ridges.iter().flat_map(|r| r.vertices.iter().copied()).collect();
        verts.sort_unstable();
        verts.dedup();
        facets[i].vertices = verts;
        for ridge in &ridges {
            let next = pivot(points, &facets[i], ridge, tol)?;
            if index.contains_key(&next.members) {
                continue;
            }
            for f in &facets {
                if f.normal.dot(&next.normal) > 1.0 - tol && (f.offset - next.offset).abs() <= tol {
                    return Err(Error::ToleranceConflict(format!(
                        "hyperplanes with offsets {} and {} coincide within tolerance but disagree on membership",
                        f.offset, next.offset
                    )));
                }
            }
            index.insert(next.members.clone(), facets.len());
            queue.push_back(facets.len());
            facets.push(next);
        }
    }
    Ok(facets)
}

/// The two endpoint "facets" of a one-dimensional point set.
fn wrap_line(points: &[Point], tol: f64) -> Vec<RawFacet> {
    let mut lo = 0;
    let mut hi = 0;
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[lo][0] {
            lo = i;
        }
        if p[0] > points[hi][0] {
            hi = i;
        }
    }
    let (min, max) = (points[lo][0], points[hi][0]);
    let near = |target: f64| -> Vec<usize> {
        (0..points.len()).filter(|&i| (points[i][0] - target).abs() <= tol).collect()
    };
    vec![
        RawFacet {
            normal: DVector::from_element(1, -1.0),
            offset: -min,
            members: near(min),
            vertices: vec![lo],
        },
        RawFacet {
            normal: DVector::from_element(1, 1.0),
            offset: max,
            members: near(max),
            vertices: vec![hi],
        },
    ]
}

struct Ridge {
    /// outward unit normal of the ridge inside the facet hyperplane
    normal: DVector<f64>,
    members: Vec<usize>,
    vertices: Vec<usize>,
}

fn ridges_of(points: &[Point], facet: &RawFacet, tol: f64) -> Result<Vec<Ridge>> {
    let dim = points[0].len();
    let basis = affine_basis(points, &facet.members, tol);
    if basis.len() != dim - 1 {
        return Err(Error::ToleranceConflict(format!(
            "facet with {} members spans only {} dimensions",
            facet.members.len(),
            basis.len()
        )));
    }
    let origin = &points[facet.members[0]];
    let local: Vec<Point> = facet
        .members
        .iter()
        .map(|&i| {
            let diff = &points[i] - origin;
            DVector::from_iterator(dim - 1, basis.iter().map(|b| b.dot(&diff)))
        })
        .collect();
    let sub = wrap(&local, tol)?;
    Ok(sub
        .into_iter()
        .map(|f| {
            let mut normal = DVector::zeros(dim);
            for (c, b) in f.normal.iter().zip(&basis) {
                normal.axpy(*c, b, 1.0);
            }
            let n = normal.norm();
            Ridge {
                normal: normal / n,
                members: f.members.iter().map(|&i| facet.members[i]).collect(),
                vertices: f.vertices.iter().map(|&i| facet.members[i]).collect(),
            }
        })
        .collect())
}

/// Rotate the hyperplane `(n, r0)` towards `m` about an affine subspace through
/// `r0` until it meets another point; returns the new unit normal.
fn rotate(points: &[Point], skip: &[usize], n: &DVector<f64>, m: &DVector<f64>, r0: &Point) -> Option<DVector<f64>> {
    let mut best: Option<(f64, usize)> = None;
    for (i, p) in points.iter().enumerate() {
        if skip.binary_search(&i).is_ok() {
            continue;
        }
        let diff = p - r0;
        let x = n.dot(&diff);
        let y = m.dot(&diff);
        let theta = (-x).atan2(y);
        if best.is_none_or(|(t, _)| theta < t) {
            best = Some((theta, i));
        }
    }
    let (theta, _) = best?;
    let mut out = n * theta.cos();
    out.axpy(theta.sin(), m, 1.0);
    let norm = out.norm();
    Some(out / norm)
}

fn pivot(points: &[Point], facet: &RawFacet, ridge: &Ridge, tol: f64) -> Result<RawFacet> {
    let r0 = &points[ridge.members[0]];
    let normal = rotate(points, &facet.members, &facet.normal, &ridge.normal, r0)
        .ok_or_else(|| Error::DegenerateInput("no point off the facet hyperplane".into()))?;
    finish_facet(points, normal, r0, tol)
}

/// Collect the points on the hyperplane, refit its normal to them and check
/// that it supports the whole cloud.
fn finish_facet(points: &[Point], approx: DVector<f64>, anchor: &Point, tol: f64) -> Result<RawFacet> {
    let dim = points[0].len();
    let b0 = approx.dot(anchor);
    let members: Vec<usize> = (0..points.len())
        .filter(|&i| (approx.dot(&points[i]) - b0).abs() <= tol)
        .collect();
    let basis = affine_basis(points, &members, tol);
    let normal = if basis.len() == dim - 1 {
        let mut n = complement_direction(&basis, dim, Some(&approx));
        if n.dot(&approx) < 0.0 {
            n = -n;
        }
        n
    } else {
        approx
    };
    let offset = members.iter().map(|&i| normal.dot(&points[i])).sum::<f64>() / members.len() as f64;
    let worst = points
        .iter()
        .map(|p| normal.dot(p) - offset)
        .fold(f64::NEG_INFINITY, f64::max);
    if worst > tol {
        return Err(Error::ToleranceConflict(format!(
            "refitted facet hyperplane has a point {worst:e} outside"
        )));
    }
    Ok(RawFacet {
        normal,
        offset,
        members,
        vertices: Vec::new(),
    })
}

fn initial_facet(points: &[Point], tol: f64) -> Result<RawFacet> {
    let dim = points[0].len();
    let lowest = (0..points.len())
        .min_by(|&a, &b| {
            points[a]
                .iter()
                .zip(points[b].iter())
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("nonempty point set");
    let mut normal = DVector::from_fn(dim, |i, _| if i == 0 { -1.0 } else { 0.0 });
    let anchor = points[lowest].clone();
    loop {
        let b = normal.dot(&anchor);
        let touching: Vec<usize> = (0..points.len())
            .filter(|&i| (normal.dot(&points[i]) - b).abs() <= tol)
            .collect();
        let basis = affine_basis(points, &touching, tol);
        if basis.len() >= dim - 1 {
            return finish_facet(points, normal, &anchor, tol);
        }
        let mut span = basis.clone();
        span.push(normal.clone());
        let span = orthonormal_span(&span, 1e-12);
        let m = complement_direction(&span, dim, None);
        normal = rotate(points, &touching, &normal, &m, &anchor)
            .ok_or_else(|| Error::DegenerateInput("points are not full-dimensional".into()))?;
    }
}
