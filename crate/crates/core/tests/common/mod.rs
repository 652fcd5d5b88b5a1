#![allow(dead_code)]

use ballapprox::{point, Point, VPolytope, DEFAULT_TOL};
use nalgebra::DMatrix;

pub fn cube(d: usize) -> Vec<Point> {
    (0..1usize << d)
        .map(|m| Point::from_fn(d, |i, _| if m >> i & 1 == 1 { 1.0 } else { -1.0 }))
        .collect()
}

pub fn cross(d: usize) -> Vec<Point> {
    let mut out = Vec::new();
    for i in 0..d {
        for s in [1.0, -1.0] {
            let mut p = Point::zeros(d);
            p[i] = s;
            out.push(p);
        }
    }
    out
}

pub fn regular_simplex(d: usize) -> Vec<Point> {
    // standard basis of R^{d+1}, centred and written in an orthonormal basis of the sum-zero plane
    let e = DMatrix::<f64>::identity(d + 1, d + 1) - DMatrix::from_element(d + 1, d + 1, 1.0 / (d + 1) as f64);
    let qr = e.columns(0, d).into_owned().qr();
    let q = qr.q();
    (0..d + 1)
        .map(|i| {
            let v = e.column(i).into_owned();
            let c = q.transpose() * v;
            c.normalize()
        })
        .collect()
}

pub fn ngon(n: usize) -> Vec<Point> {
    (0..n)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            point(&[t.cos(), t.sin()])
        })
        .collect()
}

pub fn hull(points: &[Point]) -> VPolytope {
    VPolytope::convex_hull(points, DEFAULT_TOL).unwrap()
}

pub fn scaled(points: &[Point], s: f64) -> Vec<Point> {
    points.iter().map(|p| p * s).collect()
}

pub fn shifted(points: &[Point], t: &[f64]) -> Vec<Point> {
    let t = point(t);
    points.iter().map(|p| p + &t).collect()
}
