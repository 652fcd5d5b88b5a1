use std::f64::consts::PI;

use super::constants::{sphere_area, unit_ball_volume};
use super::mc::{estimate, MCEstimate};
use super::report::{MetricReport, Method, Mode};
use super::sampling::sphere_point;
use crate::error::{Error, Result};
use crate::geometry::VPolytope;

/// `w(P) = (2/S_d) ∫ h_P`, sampled antithetically: each draw is the width `h(u) + h(-u)`.
pub fn mean_width(p: &VPolytope, samples: usize, seed: u64) -> MCEstimate {
    let d = p.dim();
    estimate(samples, seed, |rng| {
        let u = sphere_point(rng, d);
        let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
        for v in p.vertices() {
            let x = v.dot(&u);
            hi = hi.max(x);
            lo = lo.min(x);
        }
        hi - lo
    })
}

/// Closed forms in the plane and in space: `perimeter/π` for d = 2 and
/// `(1/4π) Σ_edges length · exterior angle` for d = 3.
pub fn mean_width_exact_lowdim(p: &VPolytope) -> Result<f64> {
    match p.dim() {
        2 => Ok(p.surface_area() / PI),
        3 => {
            let lattice = p.lattice();
            let mut total = 0.0;
            for edge in &lattice.faces[1] {
                let fs = lattice.facets_containing(edge);
                let (a, b) = (&p.facets()[fs[0]].normal, &p.facets()[fs[1]].normal);
                let len = (&p.vertices()[edge[0]] - &p.vertices()[edge[1]]).norm();
                total += len * a.dot(b).clamp(-1.0, 1.0).acos();
            }
            Ok(total / (4.0 * PI))
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// `w = 2 κ_{d-1} V_1 / S_d` from the exact first intrinsic volume (d ≤ 4).
pub fn mean_width_exact(p: &VPolytope) -> Option<f64> {
    let d = p.dim();
    p.intrinsic_volume(1)
        .map(|v1| 2.0 * unit_ball_volume(d - 1) * v1 / sphere_area(d))
}

pub fn mean_width_report(p: &VPolytope, samples: usize, seed: u64, mode: Mode) -> MetricReport {
    if mode == Mode::Auto {
        if let Some(w) = mean_width_exact(p) {
            return MetricReport::exact(w);
        }
    }
    MetricReport::sampled(mean_width(p, samples, seed), Method::McSphere)
}
