//! Certification sweeps: generate instances, measure deviations, evaluate
//! every bound whose face range covers `k`, and report one row per pair.
//! Also hosts the asymptotic studies and per-instance diagnostics.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    boroczky_reference, bound_delta_j, bound_hausdorff, bound_mw_inscribed, bound_symdiff_arbitrary,
    bound_vol_circumscribed, bound_wills, div_bracket, eta_dn, BoundValue, BracketMode, DivBracket,
    HausdorffBranch, InstanceDescriptor, KRange, Side,
};
use crate::constructions::{generate, mueller_estimate, GenKind, GenSpec};
use crate::error::{Error, Result};
use crate::geometry::VPolytope;
use crate::metrics::constants::{ball_intrinsic_volume, sphere_area, unit_ball_volume, MAX_DIM, MIN_DIM};
use crate::metrics::deviation::{boundary_mass_outside, boundary_split, hausdorff_ball, sphere_sublevel_fraction, surface_area_deviation, NEST_TOL};
use crate::metrics::mc::derive_seed;
use crate::metrics::{
    delta_j, delta_sigma, intrinsic_volume, mean_width_report, symdiff_ball, MCEstimate, MetricReport, Mode, Nesting,
};
use crate::optimizer::{optimize, Objective, OptConfig};

/// Slack, in standard errors, before a sampled measurement counts as below a bound.
pub const SIGMAS: f64 = 3.0;

pub const CSV_HEADER: [&str; 13] = [
    "d", "k", "N", "M", "generator", "metric", "measured", "stderr", "bound", "valid", "ratio", "status", "seed",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub d_list: Vec<usize>,
    /// empty means every `k` in `0..d`
    pub k_list: Vec<usize>,
    /// empty means the default eight-point grid from `d + 1` to 30
    pub n_list: Vec<usize>,
    pub generators: Vec<GenKind>,
    pub instances_per_cell: usize,
    pub samples: usize,
    pub seed: u64,
    /// constant of the Wills-metric bound
    pub wills_c: f64,
    pub bracket: BracketMode,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            d_list: vec![2, 3, 4],
            k_list: Vec::new(),
            n_list: Vec::new(),
            generators: vec![GenKind::RandomInscribed, GenKind::PolarOfInscribed, GenKind::CircumscribedTangent],
            instances_per_cell: 10,
            samples: 200_000,
            seed: 0,
            wills_c: 0.5,
            bracket: BracketMode::Statement,
        }
    }
}

/// Eight roughly even integers from `d + 1` to `max`.
pub fn n_grid(d: usize, max: usize) -> Vec<usize> {
    let lo = d + 1;
    if max <= lo {
        return vec![lo];
    }
    let mut out: Vec<usize> = (0..8)
        .map(|i| lo + ((max - lo) as f64 * i as f64 / 7.0).round() as usize)
        .collect();
    out.dedup();
    out
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.d_list.is_empty() {
            return Err(Error::Config("d list is empty".into()));
        }
        if self.generators.is_empty() {
            return Err(Error::Config("generator list is empty".into()));
        }
        if self.instances_per_cell == 0 {
            return Err(Error::Config("instances per cell must be at least 1".into()));
        }
        if self.generators.contains(&GenKind::Fixture) {
            return Err(Error::Config("fixtures are certified one at a time, not swept".into()));
        }
        for &d in &self.d_list {
            if !(MIN_DIM..=MAX_DIM).contains(&d) {
                return Err(Error::Config(format!("d = {d} outside {MIN_DIM}..={MAX_DIM}")));
            }
            if let Some(n) = self.n_list.iter().find(|&&n| n < d + 1) {
                return Err(Error::Config(format!("N = {n} is below d + 1 = {}", d + 1)));
            }
        }
        if !(self.wills_c > 0.0 && self.wills_c < 1.0) {
            return Err(Error::CInvalid(self.wills_c));
        }
        Ok(())
    }

    fn ns(&self, d: usize) -> Vec<usize> {
        if self.n_list.is_empty() {
            n_grid(d, 30)
        } else {
            self.n_list.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not_applicable",
        })
    }
}

/// One (instance, bound) record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertRow {
    pub d: usize,
    pub k: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub generator: String,
    pub metric: String,
    pub measured: f64,
    pub stderr: f64,
    pub bound: f64,
    pub valid: bool,
    pub ratio: f64,
    pub status: Status,
    pub seed: u64,
    pub provenance: String,
    pub requirements: Vec<crate::bounds::Requirement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn status_of(measured: f64, stderr: f64, bound: &BoundValue) -> Status {
    if !bound.valid || !measured.is_finite() {
        Status::NotApplicable
    } else if measured + SIGMAS * stderr < bound.value {
        Status::Fail
    } else {
        Status::Pass
    }
}

/// What the caller knows about where an instance came from.
#[derive(Debug, Clone)]
pub struct InstanceInfo {
    pub generator: String,
    /// points or normals drawn
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct CertifyOptions {
    pub samples: usize,
    pub wills_c: f64,
    pub bracket: BracketMode,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        let s = SweepConfig::default();
        CertifyOptions {
            samples: s.samples,
            wills_c: s.wills_c,
            bracket: s.bracket,
        }
    }
}

pub fn describe(p: &VPolytope, k: usize) -> InstanceDescriptor {
    let nest = Nesting::of(p);
    InstanceDescriptor {
        d: p.dim(),
        k,
        m: p.fvector()[k],
        inscribed: nest == Nesting::Inscribed,
        circumscribed: nest == Nesting::Circumscribed,
        origin_interior: p.origin_interior(),
        max_vertex_norm: p.max_vertex_norm(),
        facets_meet_ball_interior: p.facets().iter().all(|f| f.offset < 1.0 - NEST_TOL),
    }
}

/// Deviations of one instance, measured once and shared by all rows.
struct Measured {
    mw_deficit: MetricReport,
    vol_excess: MetricReport,
    delta: Vec<(usize, MetricReport)>,
    wills: MetricReport,
    hausdorff: Result<MetricReport>,
    symdiff: MetricReport,
    boundary_in_ball: Result<MCEstimate>,
}

fn measure(p: &VPolytope, samples: usize, seed: u64) -> Measured {
    let d = p.dim();
    let w = mean_width_report(p, samples, derive_seed(seed, 1), Mode::Auto);
    let mut js = vec![1, 2, d];
    js.dedup();
    Measured {
        mw_deficit: MetricReport { value: 2.0 - w.value, ..w },
        vol_excess: MetricReport::exact(p.volume() - unit_ball_volume(d)),
        delta: js
            .into_iter()
            .map(|j| (j, delta_j(p, j, samples, derive_seed(seed, 10 + j as u64), Mode::Auto)))
            .collect(),
        wills: delta_sigma(p, samples, derive_seed(seed, 3), Mode::Auto),
        hausdorff: hausdorff_ball(p, samples.min(50_000), derive_seed(seed, 4)),
        symdiff: symdiff_ball(p, samples, derive_seed(seed, 5)),
        boundary_in_ball: boundary_split(p, samples, derive_seed(seed, 6)).map(|s| s.dp_in_b),
    }
}

fn row(info: &InstanceInfo, inst: &InstanceDescriptor, metric: &str, measured: Result<&MetricReport>, bound: BoundValue) -> CertRow {
    let (value, stderr, note) = match measured {
        Ok(r) => (r.value, r.stderr, None),
        Err(e) => (f64::NAN, 0.0, Some(e.to_string())),
    };
    let status = status_of(value, stderr, &bound);
    CertRow {
        d: inst.d,
        k: inst.k,
        n: info.n,
        m: inst.m,
        generator: info.generator.clone(),
        metric: metric.to_string(),
        measured: value,
        stderr,
        bound: bound.value,
        valid: bound.valid,
        ratio: if bound.value > 0.0 { value / bound.value } else { f64::INFINITY },
        status,
        seed: info.seed,
        provenance: bound.provenance,
        requirements: bound.requirements,
        reference: None,
        note,
    }
}

/// Every applicable row for one polytope.
pub fn certify_polytope(p: &VPolytope, info: &InstanceInfo, ks: &[usize], opts: &CertifyOptions) -> Vec<CertRow> {
    let d = p.dim();
    let meas = measure(p, opts.samples, info.seed);
    let nest = Nesting::of(p);
    let polar = (nest == Nesting::Inscribed && p.origin_interior())
        .then(|| p.polar_dual().ok())
        .flatten();
    let area = p.surface_area();
    let mut rows = Vec::new();
    for &k in ks.iter().filter(|&&k| k < d) {
        let inst = describe(p, k);
        let m = inst.m as f64;
        let vertex_side = KRange::VertexSide.contains(d, k);
        let facet_side = KRange::FacetSide.contains(d, k);
        if vertex_side {
            rows.push(row(info, &inst, "mw_deficit", Ok(&meas.mw_deficit), bound_mw_inscribed(d, m).check(&inst)));
        }
        if facet_side {
            rows.push(row(info, &inst, "vol_excess", Ok(&meas.vol_excess), bound_vol_circumscribed(d, m).check(&inst)));
            if let Some(q) = &polar {
                let qi = describe(q, k);
                let excess = MetricReport::exact(q.volume() - unit_ball_volume(d));
                let mut r = row(info, &qi, "vol_excess_polar", Ok(&excess), bound_vol_circumscribed(d, qi.m as f64).check(&qi));
                r.note = Some("measured on the polar of the instance".into());
                rows.push(r);
            }
        }
        for (j, report) in &meas.delta {
            for (side, on) in [(Side::Inscribed, vertex_side), (Side::Circumscribed, facet_side)] {
                if on {
                    let b = bound_delta_j(d, *j, m, side, opts.bracket).check(&inst);
                    rows.push(row(info, &inst, &format!("delta_{j}"), Ok(report), b));
                }
            }
        }
        for (side, on) in [(Side::Inscribed, vertex_side), (Side::Circumscribed, facet_side)] {
            if on {
                if let Ok(b) = bound_wills(d, m, opts.wills_c, side) {
                    rows.push(row(info, &inst, "wills", Ok(&meas.wills), b.check(&inst)));
                }
            }
        }
        for branch in [
            HausdorffBranch::InscFacets,
            HausdorffBranch::InscVertices,
            HausdorffBranch::CircFacets,
            HausdorffBranch::CircVertices,
        ] {
            let range = match branch {
                HausdorffBranch::InscFacets | HausdorffBranch::CircFacets => KRange::FacetSide,
                _ => KRange::VertexSide,
            };
            if range.contains(d, k) {
                let b = bound_hausdorff(d, m, area, branch).check(&inst);
                rows.push(row(info, &inst, "hausdorff", meas.hausdorff.as_ref().map_err(Clone::clone), b));
            }
        }
        if facet_side {
            let mut r = match &meas.boundary_in_ball {
                Ok(a) => row(info, &inst, "symdiff", Ok(&meas.symdiff), bound_symdiff_arbitrary(d, a.mean, m).check(&inst)),
                Err(e) => row(info, &inst, "symdiff", Err(e.clone()), bound_symdiff_arbitrary(d, 0.0, m).check(&inst)),
            };
            r.reference = Some(boroczky_reference(d, m));
            rows.push(r);
        }
    }
    rows
}

/// Run a sweep. Cells run in parallel; rows come back in cell order.
pub fn certify(cfg: &SweepConfig) -> Result<Vec<CertRow>> {
    cfg.validate()?;
    let mut cells = Vec::new();
    for &d in &cfg.d_list {
        for n in cfg.ns(d) {
            for &kind in &cfg.generators {
                for i in 0..cfg.instances_per_cell {
                    cells.push((d, n, kind, i));
                }
            }
        }
    }
    let opts = CertifyOptions {
        samples: cfg.samples,
        wills_c: cfg.wills_c,
        bracket: cfg.bracket,
    };
    let rows: Vec<Vec<CertRow>> = cells
        .into_par_iter()
        .map(|(d, n, kind, i)| {
            let seed = instance_seed(cfg.seed, d, n, i);
            let info = InstanceInfo {
                generator: kind.to_string(),
                n,
                seed,
            };
            let ks: Vec<usize> = if cfg.k_list.is_empty() {
                (0..d).collect()
            } else {
                cfg.k_list.clone()
            };
            match generate(&GenSpec::random(kind, d, n, seed)) {
                Ok(p) => certify_polytope(&p, &info, &ks, &opts),
                Err(e) => vec![generation_failure(d, &info, e)],
            }
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

pub fn instance_seed(seed: u64, d: usize, n: usize, i: usize) -> u64 {
    derive_seed(derive_seed(derive_seed(seed, d as u64), n as u64), i as u64)
}

fn generation_failure(d: usize, info: &InstanceInfo, e: Error) -> CertRow {
    CertRow {
        d,
        k: 0,
        n: info.n,
        m: 0,
        generator: info.generator.clone(),
        metric: "generate".into(),
        measured: f64::NAN,
        stderr: 0.0,
        bound: 0.0,
        valid: false,
        ratio: f64::NAN,
        status: Status::NotApplicable,
        seed: info.seed,
        provenance: String::new(),
        requirements: Vec::new(),
        reference: None,
        note: Some(e.to_string()),
    }
}

pub fn to_csv(rows: &[CertRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            r.d.to_string(),
            r.k.to_string(),
            r.n.to_string(),
            r.m.to_string(),
            r.generator.clone(),
            r.metric.clone(),
            r.measured.to_string(),
            r.stderr.to_string(),
            r.bound.to_string(),
            r.valid.to_string(),
            r.ratio.to_string(),
            r.status.to_string(),
            r.seed.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn to_json(rows: &[CertRow]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(|e| Error::Io(e.to_string()))
}

pub fn render(rows: &[CertRow], format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(rows),
        Format::Json => to_json(rows).map(|s| s + "\n"),
    }
}

/// Inequalities every instance must satisfy, independent of any face count.
#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    /// `(V_j(P)/V_j(B_d))^{1/j}` for `j = 1..d`
    pub iso_ratios: Vec<f64>,
    /// the ratios are nonincreasing in `j`
    pub iso_chain_holds: bool,
    /// `w(B) - w(Q)` and `(2/S_d) vol(Q° ∖ B)` for the inscribed member `Q` of `{P, P°}`
    pub polarity: Option<(f64, f64)>,
    pub polarity_holds: bool,
    /// `η_{d,N}` and the sphere fraction with `h_Q ≤ 1/(1+η)`, `N = f_0(Q)`
    pub sublevel: Option<(f64, MCEstimate)>,
    pub sublevel_holds: bool,
}

pub fn diagnose(p: &VPolytope, samples: usize, seed: u64) -> Diagnostics {
    let d = p.dim();
    let mut ratios = Vec::with_capacity(d);
    let mut slack = Vec::with_capacity(d);
    for j in 1..=d {
        let r = intrinsic_volume(p, j, samples, derive_seed(seed, j as u64), Mode::Auto);
        let vb = ball_intrinsic_volume(d, j);
        let ratio = (r.value / vb).max(0.0).powf(1.0 / j as f64);
        ratios.push(ratio);
        slack.push(if r.value > 0.0 { ratio * r.stderr / (j as f64 * r.value) } else { 0.0 });
    }
    let iso_chain_holds = (1..d).all(|i| ratios[i] <= ratios[i - 1] + SIGMAS * (slack[i] + slack[i - 1]) + 1e-9);

    let s = sphere_area(d);
    let kappa = unit_ball_volume(d);
    let pair = match Nesting::of(p) {
        Nesting::Inscribed if p.origin_interior() => p.polar_dual().ok().map(|q| (p.clone(), q)),
        Nesting::Circumscribed => p.polar_dual().ok().map(|q| (q, p.clone())),
        _ => None,
    };
    let mut polarity = None;
    let mut polarity_holds = true;
    let mut sublevel = None;
    let mut sublevel_holds = true;
    if let Some((inner, outer)) = pair {
        let w = mean_width_report(&inner, samples, derive_seed(seed, 100), Mode::Auto);
        let lhs = 2.0 - w.value;
        let rhs = 2.0 / s * (outer.volume() - kappa);
        polarity_holds = lhs - SIGMAS * w.stderr <= rhs + 1e-9;
        polarity = Some((lhs, rhs));
        let eta = eta_dn(d, inner.fvector()[0] as f64);
        let frac = sphere_sublevel_fraction(&inner, 1.0 / (1.0 + eta), samples, derive_seed(seed, 101));
        sublevel_holds = frac.mean + SIGMAS * frac.stderr >= 0.75;
        sublevel = Some((eta, frac));
    }
    Diagnostics {
        iso_ratios: ratios,
        iso_chain_holds,
        polarity,
        polarity_holds,
        sublevel,
        sublevel_holds,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DivRow {
    pub d: usize,
    pub bracket: DivBracket,
    /// `(N, N^{2/(d-1)} (2 - E w(P_N)))`
    pub mueller: Vec<(usize, MCEstimate)>,
    pub optimized_n: usize,
    pub optimized_deficit: f64,
    /// `N^{2/(d-1)} Δ_w / S_d^{2/(d-1)}` of the optimized polytope
    pub normalized: f64,
    pub above_lower: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct DivConfig {
    pub d_list: Vec<usize>,
    pub mueller_ns: Vec<usize>,
    pub trials: usize,
    pub samples: usize,
    pub optimized_n: usize,
    pub opt: OptConfig,
    pub seed: u64,
}

impl Default for DivConfig {
    fn default() -> Self {
        DivConfig {
            d_list: vec![2, 3],
            mueller_ns: vec![16, 32, 64, 128],
            trials: 200,
            samples: 20_000,
            optimized_n: 128,
            opt: OptConfig {
                iters: 1500,
                restarts: 4,
                ..OptConfig::default()
            },
            seed: 0,
        }
    }
}

pub fn study_div(cfg: &DivConfig) -> Result<Vec<DivRow>> {
    if cfg.d_list.is_empty() {
        return Err(Error::Config("d list is empty".into()));
    }
    if let Some(d) = cfg.d_list.iter().find(|&&d| !(2..=6).contains(&d)) {
        return Err(Error::Config(format!("div study supports d in 2..=6, got {d}")));
    }
    cfg.d_list
        .iter()
        .map(|&d| {
            let mueller = cfg
                .mueller_ns
                .iter()
                .map(|&n| Ok((n, mueller_estimate(d, n, cfg.trials, cfg.samples, derive_seed(cfg.seed, n as u64))?)))
                .collect::<Result<Vec<_>>>()?;
            let opt = optimize(
                d,
                cfg.optimized_n,
                &OptConfig {
                    objective: Objective::MwInscribed,
                    seed: derive_seed(cfg.seed, d as u64),
                    ..cfg.opt
                },
            )?;
            let e = 2.0 / (d as f64 - 1.0);
            let normalized = (cfg.optimized_n as f64).powf(e) * opt.objective_value / sphere_area(d).powf(e);
            let bracket = div_bracket(d);
            Ok(DivRow {
                d,
                bracket,
                mueller,
                optimized_n: cfg.optimized_n,
                optimized_deficit: opt.objective_value,
                normalized,
                above_lower: normalized >= bracket.lower,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureRow {
    pub d: usize,
    /// facet count
    #[serde(rename = "N")]
    pub n: usize,
    pub instance: String,
    pub c1: f64,
    pub t: f64,
    /// `vol_{d-1}(∂P ∖ (1+t)B_d) / S_d`
    pub ratio: MCEstimate,
}

/// `t = c_1 (∂P / (4 N S_d))^{2/(d-1)}` with `N = f_{d-1}(P)`.
pub fn conjecture_t(p: &VPolytope, c1: f64) -> f64 {
    let d = p.dim();
    let n = p.fvector()[d - 1] as f64;
    c1 * (p.surface_area() / (4.0 * n * sphere_area(d))).powf(2.0 / (d as f64 - 1.0))
}

pub fn study_conjecture(instances: &[(String, VPolytope)], c1_list: &[f64], samples: usize, seed: u64) -> Result<Vec<ConjectureRow>> {
    let mut rows = Vec::new();
    for (i, (label, p)) in instances.iter().enumerate() {
        let d = p.dim();
        for (c, &c1) in c1_list.iter().enumerate() {
            let t = conjecture_t(p, c1);
            let est = boundary_mass_outside(p, t, samples, derive_seed(derive_seed(seed, i as u64), c as u64))?;
            rows.push(ConjectureRow {
                d,
                n: p.fvector()[d - 1],
                instance: label.clone(),
                c1,
                t,
                ratio: est.scale(1.0 / sphere_area(d)),
            });
        }
    }
    Ok(rows)
}

/// Smallest observed ratio per `(d, c1)`.
pub fn conjecture_minima(rows: &[ConjectureRow]) -> Vec<(usize, f64, f64)> {
    let mut out: Vec<(usize, f64, f64)> = Vec::new();
    for r in rows {
        match out.iter_mut().find(|(d, c, _)| *d == r.d && *c == r.c1) {
            Some(e) => e.2 = e.2.min(r.ratio.mean),
            None => out.push((r.d, r.c1, r.ratio.mean)),
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct HswRow {
    pub d: usize,
    /// facet count
    #[serde(rename = "M")]
    pub m: usize,
    pub instance: String,
    pub delta_s: f64,
    pub stderr: f64,
    pub surface_area: f64,
    pub c_hat: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

/// `ĉ = Δ_s κ_{d-1}^{2/(d-1)} M^{2/(d-1)} / ∂P^{(d+1)/(d-1)}`.
pub fn hsw_constant(p: &VPolytope, samples: usize, seed: u64) -> Result<HswRow> {
    let d = p.dim();
    if !p.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    let r = p.max_vertex_norm();
    if r > 2.0 + NEST_TOL {
        return Err(Error::ContainmentViolated { radius: 2.0, max_norm: r });
    }
    let m = p.fvector()[d - 1];
    let e = 2.0 / (d as f64 - 1.0);
    let ds = surface_area_deviation(p, samples, seed)?;
    let area = p.surface_area();
    let c_hat = ds.value * unit_ball_volume(d - 1).powf(e) * (m as f64).powf(e) / area.powf((d as f64 + 1.0) / (d as f64 - 1.0));
    Ok(HswRow {
        d,
        m,
        instance: String::new(),
        delta_s: ds.value,
        stderr: ds.stderr,
        surface_area: area,
        c_hat,
        flag: None,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HswReport {
    pub rows: Vec<HswRow>,
    pub min: Option<f64>,
    pub median: Option<f64>,
}

pub fn report_hsw_constants(instances: &[(String, VPolytope)], samples: usize, seed: u64) -> HswReport {
    let rows: Vec<HswRow> = instances
        .iter()
        .enumerate()
        .map(|(i, (label, p))| match hsw_constant(p, samples, derive_seed(seed, i as u64)) {
            Ok(r) => HswRow { instance: label.clone(), ..r },
            Err(e) => HswRow {
                d: p.dim(),
                m: p.fvector()[p.dim() - 1],
                instance: label.clone(),
                delta_s: f64::NAN,
                stderr: 0.0,
                surface_area: p.surface_area(),
                c_hat: f64::NAN,
                flag: Some(e.to_string()),
            },
        })
        .collect();
    let mut vals: Vec<f64> = rows.iter().filter(|r| r.flag.is_none()).map(|r| r.c_hat).collect();
    vals.sort_by(f64::total_cmp);
    let median = (!vals.is_empty()).then(|| {
        let n = vals.len();
        if n % 2 == 1 {
            vals[n / 2]
        } else {
            0.5 * (vals[n / 2 - 1] + vals[n / 2])
        }
    });
    HswReport {
        min: vals.first().copied(),
        median,
        rows,
    }
}
