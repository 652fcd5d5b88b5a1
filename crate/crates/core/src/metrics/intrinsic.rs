use super::constants::{ball_intrinsic_volume, flag_coefficient, unit_ball_volume};
use super::deviation::Nesting;
use super::mc::{estimate, MCEstimate};
use super::report::{MetricReport, Method, Mode};
use super::sampling::{ball_point, grassmann_frame};
use crate::geometry::{Projection, VPolytope};

/// Kubota: `V_j(P) = ⟦d,j⟧ E_H vol_j(P|H)` over Haar-random j-planes.
pub fn intrinsic_volume_mc(p: &VPolytope, j: usize, samples: usize, seed: u64) -> MCEstimate {
    let d = p.dim();
    if j == 0 {
        return MCEstimate::exact(1.0);
    }
    if j == d {
        return MCEstimate::exact(p.volume());
    }
    let flag = flag_coefficient(d, j);
    estimate(samples, seed, |rng| {
        let frame = grassmann_frame(rng, d, j);
        flag * p.projected_volume(&frame)
    })
}

/// Exact value when the external-angle formula applies, otherwise Kubota sampling.
pub fn intrinsic_volume(p: &VPolytope, j: usize, samples: usize, seed: u64, mode: Mode) -> MetricReport {
    if j == p.dim() || j == 0 {
        return MetricReport::exact(intrinsic_volume_mc(p, j, 0, seed).mean);
    }
    if mode == Mode::Auto {
        if let Some(v) = p.intrinsic_volume(j) {
            return MetricReport::exact(v);
        }
    }
    MetricReport::sampled(intrinsic_volume_mc(p, j, samples, seed), Method::McGrassmann)
}

/// Number of test points drawn per sampled plane in the general-position branch.
const POINTS_PER_PLANE: usize = 32;

/// `δ_j(P, B_d)`. Nested bodies reduce to `|V_j(B_d) - V_j(P)|`; otherwise the
/// projected symmetric difference is sampled plane by plane.
pub fn delta_j(p: &VPolytope, j: usize, samples: usize, seed: u64, mode: Mode) -> MetricReport {
    let d = p.dim();
    if j == 0 {
        return MetricReport::exact(0.0);
    }
    if Nesting::of(p) != Nesting::General {
        let vb = ball_intrinsic_volume(d, j);
        let mut r = intrinsic_volume(p, j, samples, seed, mode);
        r.value = (vb - r.value).abs();
        return r;
    }
    let radius = p.max_vertex_norm().max(1.0);
    let region = unit_ball_volume(j) * radius.powi(j as i32);
    let flag = flag_coefficient(d, j);
    let est = estimate(samples, seed, |rng| {
        let frame = grassmann_frame(rng, d, j);
        let image = if j == d { Projection::Full(p.clone()) } else { p.project(&frame) };
        let mut hits = 0usize;
        for _ in 0..POINTS_PER_PLANE {
            let x = ball_point(rng, j, radius);
            let in_p = match &image {
                Projection::Full(q) => q.contains(&x),
                Projection::Flat => false,
            };
            if in_p != (x.norm() <= 1.0) {
                hits += 1;
            }
        }
        flag * region * hits as f64 / POINTS_PER_PLANE as f64
    });
    MetricReport::sampled(est, Method::McGrassmann)
}

/// `δ_Σ = Σ_{j=1}^d δ_j` (`δ_0 = 0`), errors added in quadrature.
pub fn delta_sigma(p: &VPolytope, samples: usize, seed: u64, mode: Mode) -> MetricReport {
    let mut value = 0.0;
    let mut var = 0.0;
    let mut exact = true;
    for j in 1..=p.dim() {
        let r = delta_j(p, j, samples, super::mc::derive_seed(seed, j as u64), mode);
        value += r.value;
        var += r.stderr * r.stderr;
        exact &= r.method == Method::Exact;
    }
    MetricReport {
        value,
        stderr: var.sqrt(),
        method: if exact { Method::Exact } else { Method::McGrassmann },
        bracket: None,
        samples: if exact { 0 } else { samples },
        seed,
        certified: true,
    }
}
