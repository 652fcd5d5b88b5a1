//! Test polytopes: random inscribed hulls, tangent circumscribed
//! intersections, their polars, and exact fixtures.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::linalg::orthonormal_span;
use crate::geometry::{HPolytope, Point, VPolytope, DEFAULT_TOL};
use crate::metrics::mc::{derive_seed, Stats};
use crate::metrics::sampling::{gaussian_vector, sphere_point};
use crate::metrics::{mean_width, mean_width_exact, MCEstimate};

pub const MAX_DRAWS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    RandomInscribed,
    CircumscribedTangent,
    PolarOfInscribed,
    Fixture,
}

impl GenKind {
    pub fn name(self) -> &'static str {
        match self {
            GenKind::RandomInscribed => "random_inscribed",
            GenKind::CircumscribedTangent => "circumscribed_tangent",
            GenKind::PolarOfInscribed => "polar_of_inscribed",
            GenKind::Fixture => "fixture",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random_inscribed" => Ok(GenKind::RandomInscribed),
            "circumscribed_tangent" => Ok(GenKind::CircumscribedTangent),
            "polar_of_inscribed" => Ok(GenKind::PolarOfInscribed),
            "fixture" => Ok(GenKind::Fixture),
            _ => Err(Error::Config(format!("unknown generator `{s}`"))),
        }
    }
}

/// Exact fixtures. `Cube` and `CircumscribedCube` are both `[-1,1]^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fixture {
    /// regular simplex with vertices on the unit sphere
    Simplex,
    Cube,
    /// `conv(±e_i)`
    Cross,
    /// planar regular polygon with vertices on the unit circle
    RegularNgon(usize),
    /// `[-1,1]^d / √d`
    InscribedCube,
    CircumscribedCube,
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::Simplex => f.write_str("simplex"),
            Fixture::Cube => f.write_str("cube"),
            Fixture::Cross => f.write_str("cross"),
            Fixture::RegularNgon(n) => write!(f, "regular_ngon({n})"),
            Fixture::InscribedCube => f.write_str("inscribed_cube"),
            Fixture::CircumscribedCube => f.write_str("circumscribed_cube"),
        }
    }
}

impl FromStr for Fixture {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("unknown fixture `{s}`"));
        match s {
            "simplex" => Ok(Fixture::Simplex),
            "cube" => Ok(Fixture::Cube),
            "cross" => Ok(Fixture::Cross),
            "inscribed_cube" => Ok(Fixture::InscribedCube),
            "circumscribed_cube" => Ok(Fixture::CircumscribedCube),
            _ => {
                let n = s
                    .strip_prefix("regular_ngon(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| s.strip_prefix("regular_ngon:"))
                    .ok_or_else(bad)?;
                n.trim().parse().map(Fixture::RegularNgon).map_err(|_| bad())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub d: usize,
    pub n: usize,
    pub kind: GenKind,
    pub fixture: Option<Fixture>,
    pub seed: u64,
    /// Norm-preserving vertex perturbation for fixtures.
    pub jitter: Option<f64>,
}

impl GenSpec {
    pub fn random(kind: GenKind, d: usize, n: usize, seed: u64) -> Self {
        GenSpec {
            d,
            n,
            kind,
            fixture: None,
            seed,
            jitter: None,
        }
    }

    pub fn fixture(fixture: Fixture, d: usize) -> Self {
        GenSpec {
            d,
            n: 0,
            kind: GenKind::Fixture,
            fixture: Some(fixture),
            seed: 0,
            jitter: None,
        }
    }

    /// Short label for reports.
    pub fn label(&self) -> String {
        match (self.kind, self.fixture) {
            (GenKind::Fixture, Some(f)) => f.to_string(),
            (k, _) => k.to_string(),
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<VPolytope> {
    match spec.kind {
        GenKind::RandomInscribed => redraw(spec, |rng| random_inscribed(rng, spec.d, spec.n)),
        GenKind::CircumscribedTangent => redraw(spec, |rng| circumscribed_tangent(rng, spec.d, spec.n)),
        GenKind::PolarOfInscribed => redraw(spec, |rng| {
            let p = random_inscribed(rng, spec.d, spec.n)?;
            if !p.origin_interior() {
                return Err(Error::OriginNotInterior);
            }
            p.polar_dual()
        }),
        GenKind::Fixture => {
            let f = spec
                .fixture
                .ok_or_else(|| Error::Config("fixture generator needs a fixture id".into()))?;
            let mut pts = fixture_points(f, spec.d)?;
            if let Some(j) = spec.jitter.filter(|&j| j > 0.0) {
                let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
                for v in &mut pts {
                    let r = v.norm();
                    let w = &*v + gaussian_vector(&mut rng, spec.d) * (j * r);
                    *v = &w * (r / w.norm());
                }
            }
            VPolytope::convex_hull(&pts, DEFAULT_TOL)
        }
    }
}

fn redraw<F>(spec: &GenSpec, mut draw: F) -> Result<VPolytope>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<VPolytope>,
{
    if spec.d < 2 {
        return Err(Error::UnsupportedDimension(spec.d));
    }
    for attempt in 0..MAX_DRAWS {
        let stream = derive_seed(spec.seed, spec.kind as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(stream, attempt as u64));
        match draw(&mut rng) {
            Ok(p) => return Ok(p),
            Err(Error::DegenerateInput(_) | Error::ToleranceConflict(_) | Error::OriginNotInterior) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::UnboundedDraw(MAX_DRAWS))
}

fn random_inscribed(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Result<VPolytope> {
    let pts: Vec<Point> = (0..n).map(|_| sphere_point(rng, d)).collect();
    VPolytope::convex_hull(&pts, DEFAULT_TOL)
}

fn circumscribed_tangent(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Result<VPolytope> {
    let halfspaces = (0..n).map(|_| (sphere_point(rng, d), 1.0)).collect();
    HPolytope::new(halfspaces)?.to_vpolytope(DEFAULT_TOL)
}

fn unit(d: usize, i: usize, s: f64) -> Point {
    DVector::from_fn(d, |k, _| if k == i { s } else { 0.0 })
}

pub fn fixture_points(f: Fixture, d: usize) -> Result<Vec<Point>> {
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let cube = |scale: f64| -> Vec<Point> {
        (0..1usize << d)
            .map(|m| DVector::from_fn(d, |i, _| if m >> i & 1 == 1 { scale } else { -scale }))
            .collect()
    };
    Ok(match f {
        Fixture::Cube | Fixture::CircumscribedCube => cube(1.0),
        Fixture::InscribedCube => cube(1.0 / (d as f64).sqrt()),
        Fixture::Cross => (0..d).flat_map(|i| [unit(d, i, 1.0), unit(d, i, -1.0)]).collect(),
        Fixture::Simplex => {
            // e_0..e_d in ℝ^{d+1}, expressed in a basis of the hyperplane Σx = 0
            let diffs: Vec<DVector<f64>> = (0..d)
                .map(|i| unit(d + 1, i, 1.0) - unit(d + 1, d, 1.0))
                .collect();
            let basis = orthonormal_span(&diffs, 1e-12);
            let c = DVector::from_element(d + 1, 1.0 / (d as f64 + 1.0));
            (0..=d)
                .map(|i| {
                    let x = unit(d + 1, i, 1.0) - &c;
                    let y = DVector::from_fn(d, |k, _| basis[k].dot(&x));
                    let n = y.norm();
                    y / n
                })
                .collect()
        }
        Fixture::RegularNgon(n) => {
            if d != 2 {
                return Err(Error::UnsupportedDimension(d));
            }
            if n < 3 {
                return Err(Error::Config(format!("regular_ngon needs n ≥ 3, got {n}")));
            }
            (0..n)
                .map(|i| {
                    let t = 2.0 * PI * i as f64 / n as f64;
                    DVector::from_vec(vec![t.cos(), t.sin()])
                })
                .collect()
        }
    })
}

/// `N^{2/(d-1)} (w(B_d) - E w(P_N))` for hulls of `N` uniform sphere points,
/// averaged over `trials` hulls. Exact widths are used when available; above
/// d = 4 each width is sampled with `samples` directions.
pub fn mueller_estimate(d: usize, n: usize, trials: usize, samples: usize, seed: u64) -> Result<MCEstimate> {
    let scale = (n as f64).powf(2.0 / (d as f64 - 1.0));
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let p = generate(&GenSpec::random(GenKind::RandomInscribed, d, n, derive_seed(seed, t as u64)))?;
            let w = match mean_width_exact(&p) {
                Some(w) => w,
                None => mean_width(&p, samples, derive_seed(seed ^ 0x5a5a, t as u64)).mean,
            };
            Ok(scale * (2.0 - w))
        })
        .collect::<Result<_>>()?;
    let mut stats = Stats::default();
    for v in values {
        stats.push(v);
    }
    Ok(stats.estimate(seed))
}
