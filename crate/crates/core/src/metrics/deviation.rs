//! Deviations between a polytope and the unit ball.

use serde::Serialize;

use super::constants::{sphere_area, unit_ball_volume};
use super::mc::{derive_seed, estimate, estimate_many, MCEstimate};
use super::report::{MetricReport, Method};
use super::sampling::{ball_point, sphere_point, BoundarySampler};
use crate::error::{Error, Result};
use crate::geometry::{Point, VPolytope};

/// Containment tolerance for the nested branches.
pub const NEST_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Nesting {
    /// `P ⊂ B_d`
    Inscribed,
    /// `P ⊃ B_d`
    Circumscribed,
    General,
}

impl Nesting {
    /// Instances within tolerance of both are treated as inscribed.
    pub fn of(p: &VPolytope) -> Nesting {
        if p.max_vertex_norm() <= 1.0 + NEST_TOL {
            Nesting::Inscribed
        } else if p.min_facet_offset() >= 1.0 - NEST_TOL {
            Nesting::Circumscribed
        } else {
            Nesting::General
        }
    }
}

/// `vol_d(P △ B_d)`.
pub fn symdiff_ball(p: &VPolytope, samples: usize, seed: u64) -> MetricReport {
    let d = p.dim();
    let kappa = unit_ball_volume(d);
    match Nesting::of(p) {
        Nesting::Inscribed => MetricReport::exact(kappa - p.volume()),
        Nesting::Circumscribed => MetricReport::exact(p.volume() - kappa),
        Nesting::General => {
            let radius = p.max_vertex_norm().max(1.0);
            let region = kappa * radius.powi(d as i32);
            let est = estimate(samples, seed, |rng| {
                let x = ball_point(rng, d, radius);
                if p.contains(&x) != (x.norm() <= 1.0) {
                    region
                } else {
                    0.0
                }
            });
            MetricReport::sampled(est, Method::McVolume)
        }
    }
}

/// The four boundary pieces `∂P∩B`, `∂P∖B`, `∂B∩P`, `∂B∖P`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundarySplit {
    pub dp_in_b: MCEstimate,
    pub dp_out_b: MCEstimate,
    pub db_in_p: MCEstimate,
    pub db_out_p: MCEstimate,
}

pub fn boundary_split(p: &VPolytope, samples: usize, seed: u64) -> Result<BoundarySplit> {
    let d = p.dim();
    let area = p.surface_area();
    let s = sphere_area(d);
    let exact = |a: f64, b: f64| (MCEstimate::exact(a), MCEstimate::exact(b));
    let (dp_in_b, dp_out_b, db_in_p, db_out_p) = match Nesting::of(p) {
        Nesting::Inscribed => {
            let (a, b) = exact(area, 0.0);
            let (c, e) = exact(0.0, s);
            (a, b, c, e)
        }
        Nesting::Circumscribed => {
            let (a, b) = exact(0.0, area);
            let (c, e) = exact(s, 0.0);
            (a, b, c, e)
        }
        Nesting::General => {
            let sampler = BoundarySampler::new(p);
            let dp = estimate_many(samples, derive_seed(seed, 1), 2, |rng, out| {
                let x = sampler.sample(rng);
                let inside = x.norm() <= 1.0;
                out[0] = if inside { area } else { 0.0 };
                out[1] = if inside { 0.0 } else { area };
            });
            let db = estimate_many(samples, derive_seed(seed, 2), 2, |rng, out| {
                let u = sphere_point(rng, d);
                let inside = p.contains(&u);
                out[0] = if inside { s } else { 0.0 };
                out[1] = if inside { 0.0 } else { s };
            });
            (dp[0], dp[1], db[0], db[1])
        }
    };
    Ok(BoundarySplit {
        dp_in_b,
        dp_out_b,
        db_in_p,
        db_out_p,
    })
}

/// `Δ_s(B_d, P) = S_d + ∂P - 2(∂B∩P + ∂P∩B)`.
pub fn surface_area_deviation(p: &VPolytope, samples: usize, seed: u64) -> Result<MetricReport> {
    let split = boundary_split(p, samples, seed)?;
    let value = sphere_area(p.dim()) + p.surface_area() - 2.0 * (split.db_in_p.mean + split.dp_in_b.mean);
    match Nesting::of(p) {
        Nesting::General => Ok(MetricReport {
            value,
            stderr: 2.0 * (split.db_in_p.stderr.powi(2) + split.dp_in_b.stderr.powi(2)).sqrt(),
            method: Method::McSphere,
            bracket: None,
            samples,
            seed,
            certified: true,
        }),
        _ => Ok(MetricReport::exact(value)),
    }
}

/// Hausdorff distance to the ball. With the origin interior, `h_P` ranges over
/// `[min_F b_F, max_v ‖v‖]` on the sphere, so `d_H = max(max‖v‖ - 1, 1 - min_F b_F)`.
/// In the inscribed branch a refined sphere search is reported alongside as a bracket.
pub fn hausdorff_ball(p: &VPolytope, refine_samples: usize, seed: u64) -> Result<MetricReport> {
    if !p.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    let outer = p.max_vertex_norm() - 1.0;
    let inner = 1.0 - p.min_facet_offset();
    match Nesting::of(p) {
        Nesting::Circumscribed => Ok(MetricReport::exact(outer.max(0.0))),
        Nesting::Inscribed => {
            let lower = inner;
            let searched = sphere_search_gap(p, refine_samples, seed);
            let mut r = MetricReport::exact(lower);
            r.method = Method::Bracket;
            r.bracket = Some((lower, lower.max(searched)));
            r.samples = refine_samples;
            r.seed = seed;
            Ok(r)
        }
        Nesting::General => Ok(MetricReport::exact(outer.max(inner))),
    }
}

/// `max_u (1 - h_P(u))` by random search on the sphere followed by shrinking
/// tangent perturbations around the best direction.
pub fn sphere_search_gap(p: &VPolytope, samples: usize, seed: u64) -> f64 {
    let d = p.dim();
    let mut rng = super::mc::chunk_rng(seed, u64::MAX);
    let gap = |u: &Point| 1.0 - p.support(u);
    let mut best_u = sphere_point(&mut rng, d);
    let mut best = gap(&best_u);
    for _ in 1..samples.max(1) {
        let u = sphere_point(&mut rng, d);
        let g = gap(&u);
        if g > best {
            best = g;
            best_u = u;
        }
    }
    let mut step = 0.1;
    while step > 1e-9 {
        let mut improved = false;
        for _ in 0..8 * d {
            let mut v = &best_u + super::sampling::gaussian_vector(&mut rng, d) * step;
            v /= v.norm();
            let g = gap(&v);
            if g > best {
                best = g;
                best_u = v;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// Fraction of the sphere where `h_P(u) ≤ threshold`.
pub fn sphere_sublevel_fraction(p: &VPolytope, threshold: f64, samples: usize, seed: u64) -> MCEstimate {
    let d = p.dim();
    estimate(samples, seed, |rng| {
        let u = sphere_point(rng, d);
        if p.support(&u) <= threshold {
            1.0
        } else {
            0.0
        }
    })
}

/// `vol_{d-1}(∂P ∖ (1+t)B_d)` for `P ⊃ B_d`.
pub fn boundary_mass_outside(p: &VPolytope, t: f64, samples: usize, seed: u64) -> Result<MCEstimate> {
    if p.min_facet_offset() < 1.0 - NEST_TOL {
        return Err(Error::NotCircumscribed);
    }
    let area = p.surface_area();
    let limit = 1.0 + t;
    if p.max_vertex_norm() <= limit {
        return Ok(MCEstimate::exact(0.0));
    }
    let sampler = BoundarySampler::new(p);
    Ok(estimate(samples, seed, |rng| {
        if sampler.sample(rng).norm() > limit {
            area
        } else {
            0.0
        }
    }))
}

/// `vol_d(P° ∖ B_d) = vol(P°) - κ_d` for `P ⊂ B_d` with the origin interior.
pub fn polar_excess_volume(p: &VPolytope) -> Result<f64> {
    Ok(p.polar_dual()?.volume() - unit_ball_volume(p.dim()))
}
