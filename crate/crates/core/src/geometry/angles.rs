//! Exact intrinsic volumes from face volumes and external angles,
//! `V_j(P) = Σ_{F j-face} vol_j(F) γ(F, P)`.
//!
//! The external angle of a face is the normalized solid angle of its normal
//! cone, which is known in closed form up to codimension three.

use nalgebra::{DVector, Vector3};

use super::lattice::FaceLattice;
use super::linalg::{convex_polygon, orthonormal_span};
use super::measure::face_volumes;
use super::Point;

/// Largest codimension for which the external angle is evaluated exactly.
pub const MAX_EXACT_CODIM: usize = 3;

/// External angle of a face whose normal cone is generated by `normals`
/// (unit outer normals of the facets containing it), for codimension ≤ 3.
pub fn external_angle(normals: &[DVector<f64>], codim: usize) -> Option<f64> {
    match codim {
        0 => Some(1.0),
        1 => Some(0.5),
        2 | 3 => {
            let basis = orthonormal_span(normals, 1e-10);
            if basis.len() != codim {
                return None;
            }
            let local: Vec<Vec<f64>> = normals
                .iter()
                .map(|n| {
                    let c: Vec<f64> = basis.iter().map(|b| b.dot(n)).collect();
                    let len = c.iter().map(|x| x * x).sum::<f64>().sqrt();
                    c.into_iter().map(|x| x / len).collect()
                })
                .collect();
            Some(if codim == 2 {
                planar_cone_angle(&local) / (2.0 * std::f64::consts::PI)
            } else {
                solid_cone_angle(&local) / (4.0 * std::f64::consts::PI)
            })
        }
        _ => None,
    }
}

/// Opening angle of a pointed planar cone spanned by unit vectors.
fn planar_cone_angle(gens: &[Vec<f64>]) -> f64 {
    let mut best: f64 = 0.0;
    for a in gens {
        for b in gens {
            let cos = (a[0] * b[0] + a[1] * b[1]).clamp(-1.0, 1.0);
            best = best.max(cos.acos());
        }
    }
    best
}

/// Solid angle of a pointed cone in ℝ³ spanned by unit vectors.
fn solid_cone_angle(gens: &[Vec<f64>]) -> f64 {
    let g: Vec<Vector3<f64>> = gens.iter().map(|v| Vector3::new(v[0], v[1], v[2])).collect();
    let centre = g.iter().sum::<Vector3<f64>>().normalize();
    // gnomonic chart on the plane tangent to the sphere at the centre
    let e1 = {
        let t = if centre.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
        (t - centre * centre.dot(&t)).normalize()
    };
    let e2 = centre.cross(&e1);
    let chart: Vec<[f64; 2]> = g
        .iter()
        .map(|v| {
            let s = v / v.dot(&centre);
            [s.dot(&e1), s.dot(&e2)]
        })
        .collect();
    let ring = convex_polygon(&chart, 1e-14);
    let mut total = 0.0;
    for (i, &a) in ring.iter().enumerate() {
        let b = ring[(i + 1) % ring.len()];
        total += triangle_solid_angle(&centre, &g[a], &g[b]);
    }
    total
}

/// Van Oosterom–Strackee formula for unit vectors.
fn triangle_solid_angle(a: &Vector3<f64>, b: &Vector3<f64>, c: &Vector3<f64>) -> f64 {
    let num = a.dot(&b.cross(c)).abs();
    let den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    2.0 * num.atan2(den)
}

/// `V_j(P)` from the lattice, or `None` when `d - j` exceeds [`MAX_EXACT_CODIM`].
pub fn intrinsic_volume_exact(
    vertices: &[Point],
    lattice: &FaceLattice,
    facet_normals: &[DVector<f64>],
    j: usize,
) -> Option<f64> {
    let d = lattice.dim();
    if j == 0 {
        return Some(1.0);
    }
    if j > d || d - j > MAX_EXACT_CODIM {
        return None;
    }
    if j == d {
        return None;
    }
    let vols = face_volumes(vertices, lattice, j);
    let mut total = 0.0;
    for (face, vol) in lattice.faces[j].iter().zip(vols) {
        let normals: Vec<DVector<f64>> = lattice
            .facets_containing(face)
            .into_iter()
            .map(|i| facet_normals[i].clone())
            .collect();
        total += vol * external_angle(&normals, d - j)?;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn octant_is_an_eighth() {
        let g = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        assert_relative_eq!(solid_cone_angle(&g), 4.0 * std::f64::consts::PI / 8.0, epsilon = 1e-14);
    }

    #[test]
    fn square_cone_solid_angle() {
        // cone over a square at 45°: four generators (±1, ±1, 1)/√3 → solid angle 2π/3
        let s = 1.0 / 3f64.sqrt();
        let g = vec![vec![s, s, s], vec![-s, s, s], vec![-s, -s, s], vec![s, -s, s]];
        assert_relative_eq!(solid_cone_angle(&g), 2.0 * std::f64::consts::PI / 3.0, epsilon = 1e-13);
    }

    #[test]
    fn right_angle_in_the_plane() {
        let g = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_relative_eq!(planar_cone_angle(&g), std::f64::consts::FRAC_PI_2, epsilon = 1e-15);
    }
}
