//! Small dense linear-algebra helpers on `DVector<f64>`.

use nalgebra::{DMatrix, DVector};

use super::Point;

/// Orthonormal basis of `span(vectors)` by pivoted modified Gram–Schmidt.
///
/// At every step the remaining vector with the largest residual is taken;
/// the process stops once every residual norm is below `tol`.
pub fn orthonormal_span(vectors: &[DVector<f64>], tol: f64) -> Vec<DVector<f64>> {
    let Some(first) = vectors.first() else {
        return Vec::new();
    };
    let dim = first.len();
    let mut residual: Vec<DVector<f64>> = vectors.to_vec();
    let mut basis: Vec<DVector<f64>> = Vec::new();
    while basis.len() < dim {
        let (best, norm) = residual
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.norm()))
            .fold((usize::MAX, 0.0), |acc, (i, n)| if n > acc.1 { (i, n) } else { acc });
        if best == usize::MAX || norm < tol {
            break;
        }
        let mut q = residual[best].clone() / norm;
        // one re-orthogonalisation pass keeps the basis orthonormal to round-off
        for b in &basis {
            let c = q.dot(b);
            q.axpy(-c, b, 1.0);
        }
        q /= q.norm();
        for r in residual.iter_mut() {
            let c = r.dot(&q);
            r.axpy(-c, &q, 1.0);
        }
        basis.push(q);
    }
    basis
}

/// Orthonormal basis of the direction space of the affine hull of `points[ids]`.
pub fn affine_basis(points: &[Point], ids: &[usize], tol: f64) -> Vec<DVector<f64>> {
    let Some(&first) = ids.first() else {
        return Vec::new();
    };
    let origin = &points[first];
    let diffs: Vec<DVector<f64>> = ids[1..].iter().map(|&i| &points[i] - origin).collect();
    orthonormal_span(&diffs, tol)
}

/// Affine dimension of `points[ids]`; `-1` is never returned, an empty set has dimension 0.
pub fn affine_dim(points: &[Point], ids: &[usize], tol: f64) -> usize {
    affine_basis(points, ids, tol).len()
}

/// Unit vector orthogonal to all of `basis`, seeded from `hint` (or the
/// standard basis vector with the largest residual when `hint` is nearly in the span).
pub fn complement_direction(basis: &[DVector<f64>], dim: usize, hint: Option<&DVector<f64>>) -> DVector<f64> {
    let project_out = |v: &DVector<f64>| {
        let mut r = v.clone();
        for _ in 0..2 {
            for b in basis {
                let c = r.dot(b);
                r.axpy(-c, b, 1.0);
            }
        }
        r
    };
    if let Some(h) = hint {
        let r = project_out(h);
        let n = r.norm();
        if n > 1e-6 * h.norm().max(1.0) {
            return r / n;
        }
    }
    let mut best = DVector::zeros(dim);
    let mut best_norm = -1.0;
    for i in 0..dim {
        let r = project_out(&DVector::from_fn(dim, |k, _| if k == i { 1.0 } else { 0.0 }));
        let n = r.norm();
        if n > best_norm {
            best_norm = n;
            best = r;
        }
    }
    best / best_norm
}

/// k-dimensional volume of the simplex `conv(points[ids])`, `k = ids.len() - 1`.
pub fn simplex_volume(points: &[Point], ids: &[usize]) -> f64 {
    let k = ids.len() - 1;
    if k == 0 {
        return 1.0;
    }
    let origin = &points[ids[0]];
    let dim = origin.len();
    let edges = DMatrix::from_fn(dim, k, |r, c| points[ids[c + 1]][r] - origin[r]);
    let det = if k == dim {
        edges.determinant().abs()
    } else {
        (edges.transpose() * &edges).determinant().max(0.0).sqrt()
    };
    det / factorial(k)
}

/// Volume of the d-simplex spanned by `apex` and `points[ids]` (`ids.len() == d`).
pub fn cone_simplex_volume(apex: &Point, points: &[Point], ids: &[usize]) -> f64 {
    let dim = apex.len();
    let m = DMatrix::from_fn(dim, dim, |r, c| points[ids[c]][r] - apex[r]);
    m.determinant().abs() / factorial(dim)
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Counter-clockwise order of the extreme points of a planar point set
/// (Andrew's monotone chain). Collinear boundary points are dropped.
pub fn convex_polygon(points: &[[f64; 2]], tol: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a][0]
            .total_cmp(&points[b][0])
            .then(points[a][1].total_cmp(&points[b][1]))
    });
    idx.dedup_by(|a, b| {
        (points[*a][0] - points[*b][0]).abs() <= tol && (points[*a][1] - points[*b][1]).abs() <= tol
    });
    if idx.len() < 3 {
        return idx;
    }
    let cross = |o: usize, a: usize, b: usize| {
        (points[a][0] - points[o][0]) * (points[b][1] - points[o][1])
            - (points[a][1] - points[o][1]) * (points[b][0] - points[o][0])
    };
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for &p in &idx {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= tol * tol {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in idx.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= tol * tol {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Shoelace area of a polygon given in boundary order.
pub fn polygon_area(points: &[[f64; 2]], order: &[usize]) -> f64 {
    if order.len() < 3 {
        return 0.0;
    }
    let mut twice = 0.0;
    for (i, &a) in order.iter().enumerate() {
        let b = order[(i + 1) % order.len()];
        twice += points[a][0] * points[b][1] - points[b][0] * points[a][1];
    }
    0.5 * twice.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn span_drops_dependent_vectors() {
        let v = vec![
            DVector::from_vec(vec![1.0, 0.0, 0.0]),
            DVector::from_vec(vec![2.0, 0.0, 0.0]),
            DVector::from_vec(vec![1.0, 1.0, 0.0]),
        ];
        let b = orthonormal_span(&v, 1e-9);
        assert_eq!(b.len(), 2);
        assert_relative_eq!(b[0].dot(&b[1]), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn simplex_volumes() {
        let pts: Vec<Point> = vec![
            DVector::from_vec(vec![0.0, 0.0, 0.0]),
            DVector::from_vec(vec![1.0, 0.0, 0.0]),
            DVector::from_vec(vec![0.0, 1.0, 0.0]),
            DVector::from_vec(vec![0.0, 0.0, 1.0]),
        ];
        assert_relative_eq!(simplex_volume(&pts, &[0, 1, 2, 3]), 1.0 / 6.0, epsilon = 1e-15);
        assert_relative_eq!(simplex_volume(&pts, &[1, 2, 3]), 3f64.sqrt() / 2.0, epsilon = 1e-14);
        assert_relative_eq!(simplex_volume(&pts, &[0, 1]), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn monotone_chain_square_with_interior_point() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.5, 0.5], [1.0, 1.0], [0.0, 1.0], [0.5, 0.0]];
        let hull = convex_polygon(&pts, 1e-12);
        assert_eq!(hull.len(), 4);
        assert_relative_eq!(polygon_area(&pts, &hull), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
    }
}
