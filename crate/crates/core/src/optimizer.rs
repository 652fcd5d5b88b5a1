//! Derivative-free local search over inscribed vertex sets and tangent
//! circumscribed normal sets.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{HPolytope, Point, VPolytope, DEFAULT_TOL};
use crate::metrics::constants::unit_ball_volume;
use crate::metrics::mc::derive_seed;
use crate::metrics::sampling::{gaussian_vector, sphere_point};
use crate::metrics::{mean_width, mean_width_exact, MCEstimate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// `2 - w(P)`, vertices on the sphere
    MwInscribed,
    /// `vol(P) - κ_d`, facets tangent to the sphere
    VolCircumscribed,
    /// `1 - min_F b_F`
    HausdorffInscribed,
    /// `max ‖v‖ - 1`
    HausdorffCircumscribed,
}

impl Objective {
    pub fn inscribed(self) -> bool {
        matches!(self, Objective::MwInscribed | Objective::HausdorffInscribed)
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::MwInscribed => "mw_inscribed",
            Objective::VolCircumscribed => "vol_circumscribed",
            Objective::HausdorffInscribed => "hausdorff_inscribed",
            Objective::HausdorffCircumscribed => "hausdorff_circumscribed",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mw_inscribed" => Ok(Objective::MwInscribed),
            "vol_circumscribed" => Ok(Objective::VolCircumscribed),
            "hausdorff_inscribed" => Ok(Objective::HausdorffInscribed),
            "hausdorff_circumscribed" => Ok(Objective::HausdorffCircumscribed),
            _ => Err(Error::Config(format!("unknown objective `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptConfig {
    pub iters: usize,
    pub restarts: usize,
    /// initial perturbation angle in radians
    pub step0: f64,
    /// step multiplier after a rejection streak
    pub decay: f64,
    pub seed: u64,
    pub objective: Objective,
    /// directions per mean-width estimate when no closed form is available
    pub samples_per_eval: usize,
}

impl Default for OptConfig {
    fn default() -> Self {
        OptConfig {
            iters: 2000,
            restarts: 4,
            step0: 0.3,
            decay: 0.5,
            seed: 0,
            objective: Objective::MwInscribed,
            samples_per_eval: 20_000,
        }
    }
}

impl OptConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step0 > 0.0) {
            return Err(Error::Config(format!("step0 must be positive, got {}", self.step0)));
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return Err(Error::Config(format!("decay must lie in (0,1), got {}", self.decay)));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OptResult {
    pub best: VPolytope,
    /// the unit vectors the search moved (vertices or facet normals)
    pub directions: Vec<Point>,
    pub objective_value: f64,
    pub history: Vec<(usize, f64)>,
    pub seed_used: u64,
}

/// Serializable summary of an [`OptResult`].
#[derive(Debug, Clone, Serialize)]
pub struct OptSummary {
    pub objective: Objective,
    pub objective_value: f64,
    pub fvector: Vec<usize>,
    pub history: Vec<(usize, f64)>,
    pub seed_used: u64,
}

impl OptResult {
    pub fn summary(&self, objective: Objective) -> OptSummary {
        OptSummary {
            objective,
            objective_value: self.objective_value,
            fvector: self.best.fvector(),
            history: self.history.clone(),
            seed_used: self.seed_used,
        }
    }
}

/// Build the polytope a direction set stands for.
pub fn realize(dirs: &[Point], objective: Objective) -> Result<VPolytope> {
    if objective.inscribed() {
        VPolytope::convex_hull(dirs, DEFAULT_TOL)
    } else {
        HPolytope::new(dirs.iter().map(|u| (u.clone(), 1.0)).collect())?.to_vpolytope(DEFAULT_TOL)
    }
}

fn evaluate(p: &VPolytope, cfg: &OptConfig, seed: u64) -> Result<MCEstimate> {
    if !p.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    Ok(match cfg.objective {
        Objective::MwInscribed => match mean_width_exact(p) {
            Some(w) => MCEstimate::exact(2.0 - w),
            None => {
                let e = mean_width(p, cfg.samples_per_eval, seed);
                MCEstimate { mean: 2.0 - e.mean, ..e }
            }
        },
        Objective::VolCircumscribed => MCEstimate::exact(p.volume() - unit_ball_volume(p.dim())),
        Objective::HausdorffInscribed => MCEstimate::exact(1.0 - p.min_facet_offset()),
        Objective::HausdorffCircumscribed => MCEstimate::exact(p.max_vertex_norm() - 1.0),
    })
}

/// Rotate `v` by `angle` toward a uniformly random tangent direction.
fn tangent_step<R: Rng>(rng: &mut R, v: &Point, angle: f64) -> Point {
    loop {
        let g = gaussian_vector(rng, v.len());
        let t = &g - v * v.dot(&g);
        let n = t.norm();
        if n > 1e-12 {
            let w = v * angle.cos() + t * (angle.sin() / n);
            let r = w.norm();
            return w / r;
        }
    }
}

fn initial<R: Rng>(rng: &mut R, d: usize, n: usize, cfg: &OptConfig) -> Result<(Vec<Point>, VPolytope, MCEstimate)> {
    for attempt in 0..crate::constructions::MAX_DRAWS {
        let dirs: Vec<Point> = (0..n).map(|_| sphere_point(rng, d)).collect();
        let Ok(p) = realize(&dirs, cfg.objective) else { continue };
        if let Ok(v) = evaluate(&p, cfg, derive_seed(cfg.seed, attempt as u64)) {
            return Ok((dirs, p, v));
        }
    }
    Err(Error::UnboundedDraw(crate::constructions::MAX_DRAWS))
}

fn run(d: usize, n: usize, cfg: &OptConfig, seed: u64) -> Result<OptResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut dirs, mut best, mut value) = initial(&mut rng, d, n, cfg)?;
    let mut history = vec![(0, value.mean)];
    let mut step = cfg.step0;
    let mut streak = 0;
    let patience = 2 * n;
    for iter in 1..=cfg.iters {
        let i = rng.random_range(0..n);
        let old = dirs[i].clone();
        dirs[i] = tangent_step(&mut rng, &old, step);
        let candidate = realize(&dirs, cfg.objective)
            .and_then(|p| evaluate(&p, cfg, derive_seed(seed, iter as u64)).map(|v| (p, v)));
        let accepted = match candidate {
            Ok((p, v)) => {
                let noise = 3.0 * (v.stderr.powi(2) + value.stderr.powi(2)).sqrt();
                if v.mean < value.mean - noise {
                    best = p;
                    value = v;
                    history.push((iter, v.mean));
                    true
                } else {
                    false
                }
            }
            Err(_) => false,
        };
        if accepted {
            streak = 0;
        } else {
            dirs[i] = old;
            streak += 1;
            if streak >= patience {
                step = (step * cfg.decay).max(1e-12);
                streak = 0;
            }
        }
    }
    Ok(OptResult {
        best,
        directions: dirs,
        objective_value: value.mean,
        history,
        seed_used: seed,
    })
}

/// Best of `cfg.restarts` independently seeded hill climbs. Restarts run in
/// parallel; the winner is the lowest value, ties going to the lower index.
pub fn optimize(d: usize, n: usize, cfg: &OptConfig) -> Result<OptResult> {
    cfg.validate()?;
    if d < 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    if n < d + 1 {
        return Err(Error::Config(format!("need at least d+1 = {} points, got {n}", d + 1)));
    }
    let runs: Vec<Result<OptResult>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run(d, n, cfg, derive_seed(cfg.seed, r as u64)))
        .collect();
    let mut best: Option<OptResult> = None;
    for r in runs {
        let r = r?;
        if best.as_ref().is_none_or(|b| r.objective_value < b.objective_value) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least one restart"))
}
