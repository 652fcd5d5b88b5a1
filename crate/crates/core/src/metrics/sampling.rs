//! Uniform samplers on spheres, balls, Grassmannians and polytope boundaries.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::geometry::measure::triangulate_face;
use crate::geometry::{Point, VPolytope};

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DVector<f64> {
    DVector::from_fn(d, |_, _| rng.sample(StandardNormal))
}

/// Uniform point on `S^{d-1}` (normalized Gaussian).
pub fn sphere_point<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Point {
    loop {
        let g = gaussian_vector(rng, d);
        let n = g.norm();
        if n > 1e-300 {
            return g / n;
        }
    }
}

/// Uniform point in the d-ball of the given radius.
pub fn ball_point<R: Rng + ?Sized>(rng: &mut R, d: usize, radius: f64) -> Point {
    let u: f64 = rng.random();
    sphere_point(rng, d) * (radius * u.powf(1.0 / d as f64))
}

/// Haar-random orthonormal `d × j` frame. Columns come from Gram–Schmidt on a
/// Gaussian matrix; each column's first nonzero entry is made positive.
pub fn grassmann_frame<R: Rng + ?Sized>(rng: &mut R, d: usize, j: usize) -> DMatrix<f64> {
    loop {
        let g = DMatrix::from_fn(d, j, |_, _| rng.sample(StandardNormal));
        let mut cols: Vec<DVector<f64>> = Vec::with_capacity(j);
        let mut ok = true;
        for c in 0..j {
            let mut v = g.column(c).into_owned();
            for _ in 0..2 {
                for q in &cols {
                    let t = v.dot(q);
                    v.axpy(-t, q, 1.0);
                }
            }
            let n = v.norm();
            if n < 1e-10 {
                ok = false;
                break;
            }
            v /= n;
            if let Some(first) = v.iter().find(|x| **x != 0.0) {
                if *first < 0.0 {
                    v = -v;
                }
            }
            cols.push(v);
        }
        if ok {
            return DMatrix::from_columns(&cols);
        }
    }
}

/// Uniform barycentric weights on a k-simplex.
pub fn simplex_weights<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..=k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

/// Area-weighted sampler of `∂P` through the facet triangulations.
#[derive(Debug, Clone)]
pub struct BoundarySampler {
    simplices: Vec<Vec<Point>>,
    cumulative: Vec<f64>,
    total: f64,
}

impl BoundarySampler {
    pub fn new(p: &VPolytope) -> Self {
        let lattice = p.lattice();
        let top = p.dim() - 1;
        let mut simplices = Vec::new();
        let mut cumulative = Vec::new();
        let mut total = 0.0;
        for i in 0..lattice.faces[top].len() {
            for s in triangulate_face(lattice, top, i) {
                let area = crate::geometry::linalg::simplex_volume(p.vertices(), &s);
                if area <= 0.0 {
                    continue;
                }
                total += area;
                cumulative.push(total);
                simplices.push(s.iter().map(|&v| p.vertices()[v].clone()).collect());
            }
        }
        BoundarySampler {
            simplices,
            cumulative,
            total,
        }
    }

    pub fn total_area(&self) -> f64 {
        self.total
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let t = rng.random::<f64>() * self.total;
        let idx = self.cumulative.partition_point(|&c| c < t).min(self.simplices.len() - 1);
        let s = &self.simplices[idx];
        let w = simplex_weights(rng, s.len() - 1);
        let mut x = Point::zeros(s[0].len());
        for (v, wi) in s.iter().zip(w) {
            x.axpy(wi, v, 1.0);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::mc::chunk_rng;

    #[test]
    fn frames_are_orthonormal_with_sign_convention() {
        let mut rng = chunk_rng(5, 0);
        for _ in 0..50 {
            let f = grassmann_frame(&mut rng, 5, 3);
            let gram = f.transpose() * &f;
            assert!((gram - DMatrix::identity(3, 3)).amax() < 1e-12);
            for c in 0..3 {
                assert!(f.column(c).iter().find(|x| **x != 0.0).unwrap() > &0.0);
            }
        }
    }

    #[test]
    fn ball_points_fill_radius() {
        let mut rng = chunk_rng(9, 0);
        let inside_half = (0..20_000)
            .filter(|_| ball_point(&mut rng, 3, 2.0).norm() < 1.0)
            .count() as f64
            / 20_000.0;
        assert!((inside_half - 0.125).abs() < 0.01);
    }
}
