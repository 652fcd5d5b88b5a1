//! `ballapprox` command-line interface: certification sweeps, bound
//! evaluation, fixture generation, optimization and the asymptotic studies.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use ballapprox::bounds::{self, BracketMode, HausdorffBranch, Side};
use ballapprox::constructions::{generate, mueller_estimate, Fixture, GenKind, GenSpec};
use ballapprox::geometry::io::{format_points, read_points};
use ballapprox::harness::{
    self, certify, certify_polytope, conjecture_minima, render, report_hsw_constants, study_conjecture, study_div,
    CertifyOptions, DivConfig, Format, InstanceInfo, Status, SweepConfig,
};
use ballapprox::metrics::ball_constants;
use ballapprox::optimizer::{optimize, Objective, OptConfig};
use ballapprox::{VPolytope, DEFAULT_TOL};

#[derive(Parser)]
#[command(name = "ballapprox", version, about = "Polytopal approximation of the Euclidean ball")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Dimension(s), comma separated
    #[arg(long = "d", global = true, value_delimiter = ',')]
    d: Vec<usize>,
    /// Face dimension(s) k, comma separated (default: all)
    #[arg(long = "k", global = true, value_delimiter = ',')]
    k: Vec<usize>,
    /// Point / normal / face counts, comma separated
    #[arg(long = "n", global = true, value_delimiter = ',')]
    n: Vec<usize>,
    /// Monte Carlo samples per estimate
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, default_value = "csv")]
    format: String,
    /// Output file (default: stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Geometric tolerance for hulls read from files
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

impl Global {
    fn format(&self) -> Result<Format> {
        Ok(self.format.parse()?)
    }

    fn one_d(&self) -> Result<usize> {
        match self.d[..] {
            [d] => Ok(d),
            [] => bail!("--d is required"),
            _ => bail!("expected a single --d"),
        }
    }

    fn one_n(&self) -> Result<usize> {
        match self.n[..] {
            [n] => Ok(n),
            [] => bail!("--n is required"),
            _ => bail!("expected a single --n"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Measure deviations and check every applicable lower bound
    Certify(CertifyArgs),
    /// Evaluate a closed-form bound or constant as JSON
    Bounds(BoundsArgs),
    /// Write a generated polytope in the text format
    Fixtures(FixtureArgs),
    /// Hill-climb toward a best approximating polytope
    Optimize(OptimizeArgs),
    /// Dirichlet–Voronoi constant study: bracket, random hulls, optimized hulls
    Div(DivArgs),
    /// N^{2/(d-1)} (w(B) - E w(P_N)) for random inscribed hulls
    Mueller(MuellerArgs),
    /// Outside boundary mass of circumscribed polytopes at cap height t
    Conjecture(ConjectureArgs),
    /// Empirical constants of the surface-area deviation bound
    Hsw(HswArgs),
}

#[derive(Args)]
struct CertifyArgs {
    /// Generators to sweep, comma separated
    #[arg(long, value_delimiter = ',')]
    generators: Vec<String>,
    #[arg(long)]
    instances: Option<usize>,
    /// Sweep configuration as JSON; command-line values override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Certify a single polytope file instead of sweeping
    #[arg(long)]
    input: Option<PathBuf>,
    /// Certify a fixture instead of sweeping
    #[arg(long)]
    fixture: Option<String>,
    /// Constant c of the Wills-metric bound
    #[arg(long)]
    wills_c: Option<f64>,
    /// Correction bracket of the intrinsic-volume bound: statement or proof
    #[arg(long)]
    bracket: Option<String>,
}

#[derive(Args)]
struct BoundsArgs {
    /// mw_inscribed, vol_circumscribed, delta_j, wills, symdiff_arbitrary, hausdorff,
    /// eta, asymptotic_mw, asymptotic_vol, div_bracket, muller_limit, rho, flag_ratio_trend,
    /// ball_constants, boroczky_reference
    name: String,
    /// Face count M (or N); defaults to the global --n
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    j: Option<usize>,
    /// inscribed or circumscribed
    #[arg(long, default_value = "inscribed")]
    side: String,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    /// Boundary mass A for the symmetric-difference bound, or ∂P for Hausdorff bounds
    #[arg(long)]
    area: Option<f64>,
    /// insc_facets, insc_vertices, circ_facets, circ_vertices
    #[arg(long, default_value = "insc_facets")]
    branch: String,
    #[arg(long, default_value = "statement")]
    bracket: String,
}

#[derive(Args)]
struct FixtureArgs {
    /// random_inscribed, circumscribed_tangent, polar_of_inscribed or fixture
    #[arg(long, default_value = "fixture")]
    kind: String,
    /// simplex, cube, cross, regular_ngon(n), inscribed_cube, circumscribed_cube
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long)]
    jitter: Option<f64>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long, default_value = "mw_inscribed")]
    objective: String,
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    step0: Option<f64>,
    #[arg(long)]
    decay: Option<f64>,
    /// Also write the optimized polytope here
    #[arg(long)]
    polytope_out: Option<PathBuf>,
}

#[derive(Args)]
struct DivArgs {
    #[arg(long)]
    trials: Option<usize>,
    /// Vertex count of the optimized hull
    #[arg(long)]
    opt_n: Option<usize>,
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
}

#[derive(Args)]
struct MuellerArgs {
    #[arg(long, default_value_t = 200)]
    trials: usize,
}

#[derive(Args)]
struct ConjectureArgs {
    /// Values of c1, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.5, 1.0, 2.0])]
    c1: Vec<f64>,
    #[arg(long, default_value_t = 5)]
    instances: usize,
    /// Polytope files to use instead of random tangent polytopes
    #[arg(long)]
    input: Vec<PathBuf>,
}

#[derive(Args)]
struct HswArgs {
    #[arg(long, default_value_t = 5)]
    instances: usize,
    #[arg(long, value_delimiter = ',')]
    generators: Vec<String>,
    #[arg(long)]
    input: Vec<PathBuf>,
}

fn emit(global: &Global, text: &str) -> Result<()> {
    match &global.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn read_polytope(path: &Path, tol: f64) -> Result<VPolytope> {
    let pts = read_points(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(VPolytope::convex_hull(&pts, tol)?)
}

fn parse_bracket(s: &str) -> Result<BracketMode> {
    match s {
        "statement" => Ok(BracketMode::Statement),
        "proof" => Ok(BracketMode::Proof),
        _ => bail!("unknown bracket mode `{s}`"),
    }
}

fn parse_side(s: &str) -> Result<Side> {
    match s {
        "inscribed" => Ok(Side::Inscribed),
        "circumscribed" => Ok(Side::Circumscribed),
        _ => bail!("unknown side `{s}`"),
    }
}

fn parse_branch(s: &str) -> Result<HausdorffBranch> {
    match s {
        "insc_facets" => Ok(HausdorffBranch::InscFacets),
        "insc_vertices" => Ok(HausdorffBranch::InscVertices),
        "circ_facets" => Ok(HausdorffBranch::CircFacets),
        "circ_vertices" => Ok(HausdorffBranch::CircVertices),
        _ => bail!("unknown Hausdorff branch `{s}`"),
    }
}

fn parse_generators(list: &[String]) -> Result<Vec<GenKind>> {
    Ok(list.iter().map(|s| s.parse()).collect::<Result<_, _>>()?)
}

/// `Ok(true)` when some row failed.
fn run_certify(g: &Global, a: &CertifyArgs) -> Result<bool> {
    let format = g.format()?;
    let mut cfg: SweepConfig = match &a.config {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?).context("parsing sweep config")?,
        None => SweepConfig::default(),
    };
    if !g.d.is_empty() {
        cfg.d_list = g.d.clone();
    }
    if !g.k.is_empty() {
        cfg.k_list = g.k.clone();
    }
    if !g.n.is_empty() {
        cfg.n_list = g.n.clone();
    }
    if !a.generators.is_empty() {
        cfg.generators = parse_generators(&a.generators)?;
    }
    if let Some(i) = a.instances {
        cfg.instances_per_cell = i;
    }
    if let Some(s) = g.samples {
        cfg.samples = s;
    }
    cfg.seed = g.seed;
    if let Some(c) = a.wills_c {
        cfg.wills_c = c;
    }
    if let Some(b) = &a.bracket {
        cfg.bracket = parse_bracket(b)?;
    }

    let single = match (&a.input, &a.fixture) {
        (Some(path), _) => Some((path.display().to_string(), read_polytope(path, g.tol)?)),
        (None, Some(f)) => {
            let fixture: Fixture = f.parse()?;
            let p = generate(&GenSpec::fixture(fixture, g.one_d()?))?;
            Some((fixture.to_string(), p))
        }
        (None, None) => None,
    };
    let rows = match single {
        Some((label, p)) => {
            let d = p.dim();
            let ks: Vec<usize> = if cfg.k_list.is_empty() { (0..d).collect() } else { cfg.k_list.clone() };
            let info = InstanceInfo {
                generator: label,
                n: p.fvector()[0],
                seed: g.seed,
            };
            let opts = CertifyOptions {
                samples: cfg.samples,
                wills_c: cfg.wills_c,
                bracket: cfg.bracket,
            };
            certify_polytope(&p, &info, &ks, &opts)
        }
        None => certify(&cfg)?,
    };
    emit(g, &render(&rows, format)?)?;
    Ok(rows.iter().any(|r| r.status == Status::Fail))
}

fn run_bounds(g: &Global, a: &BoundsArgs) -> Result<()> {
    #[derive(Serialize)]
    struct Scalar {
        value: f64,
    }
    let d = || g.one_d();
    let m = || -> Result<f64> {
        match a.m {
            Some(m) => Ok(m),
            None => Ok(g.one_n()? as f64),
        }
    };
    let out = match a.name.as_str() {
        "mw_inscribed" => json(&bounds::bound_mw_inscribed(d()?, m()?))?,
        "vol_circumscribed" => json(&bounds::bound_vol_circumscribed(d()?, m()?))?,
        "delta_j" => {
            let j = a.j.context("--j is required")?;
            json(&bounds::bound_delta_j(d()?, j, m()?, parse_side(&a.side)?, parse_bracket(&a.bracket)?))?
        }
        "wills" => json(&bounds::bound_wills(d()?, m()?, a.c, parse_side(&a.side)?)?)?,
        "symdiff_arbitrary" => {
            let area = a.area.context("--area is required")?;
            json(&bounds::bound_symdiff_arbitrary(d()?, area, m()?))?
        }
        "hausdorff" => {
            let area = a.area.context("--area is required")?;
            json(&bounds::bound_hausdorff(d()?, m()?, area, parse_branch(&a.branch)?))?
        }
        "eta" => json(&Scalar { value: bounds::eta_dn(d()?, m()?) })?,
        "asymptotic_mw" => json(&Scalar { value: bounds::asymptotic_lower_mw(d()?) })?,
        "asymptotic_vol" => json(&Scalar { value: bounds::asymptotic_lower_vol(d()?) })?,
        "div_bracket" => json(&bounds::div_bracket(d()?))?,
        "muller_limit" => json(&Scalar { value: bounds::muller_limit(d()?) })?,
        "rho" => json(&bounds::rho_d(d()?))?,
        "flag_ratio_trend" => {
            let ds = if g.d.is_empty() { (2..=8).collect() } else { g.d.clone() };
            json(&bounds::flag_ratio_trend(ds))?
        }
        "ball_constants" => json(&ball_constants(d()?)?)?,
        "boroczky_reference" => json(&Scalar {
            value: bounds::boroczky_reference(d()?, m()?),
        })?,
        other => bail!("unknown bound `{other}`"),
    };
    emit(g, &out)
}

fn run_fixtures(g: &Global, a: &FixtureArgs) -> Result<()> {
    let kind: GenKind = a.kind.parse()?;
    let spec = GenSpec {
        d: g.one_d()?,
        n: g.n.first().copied().unwrap_or(0),
        kind,
        fixture: a.fixture.as_deref().map(str::parse).transpose()?,
        seed: g.seed,
        jitter: a.jitter,
    };
    let p = generate(&spec)?;
    emit(g, &format_points(p.vertices()))
}

fn run_optimize(g: &Global, a: &OptimizeArgs) -> Result<()> {
    let defaults = OptConfig::default();
    let cfg = OptConfig {
        iters: a.iters.unwrap_or(defaults.iters),
        restarts: a.restarts.unwrap_or(defaults.restarts),
        step0: a.step0.unwrap_or(defaults.step0),
        decay: a.decay.unwrap_or(defaults.decay),
        seed: g.seed,
        objective: a.objective.parse::<Objective>()?,
        samples_per_eval: g.samples.unwrap_or(defaults.samples_per_eval),
    };
    let r = optimize(g.one_d()?, g.one_n()?, &cfg)?;
    if let Some(path) = &a.polytope_out {
        std::fs::write(path, format_points(r.best.vertices())).with_context(|| format!("writing {}", path.display()))?;
    }
    emit(g, &json(&r.summary(cfg.objective))?)
}

fn run_div(g: &Global, a: &DivArgs) -> Result<()> {
    let mut cfg = DivConfig {
        seed: g.seed,
        ..DivConfig::default()
    };
    if !g.d.is_empty() {
        cfg.d_list = g.d.clone();
    }
    if !g.n.is_empty() {
        cfg.mueller_ns = g.n.clone();
    }
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    if let Some(s) = g.samples {
        cfg.samples = s;
    }
    if let Some(n) = a.opt_n {
        cfg.optimized_n = n;
    }
    if let Some(i) = a.iters {
        cfg.opt.iters = i;
    }
    if let Some(r) = a.restarts {
        cfg.opt.restarts = r;
    }
    let rows = study_div(&cfg)?;
    let out = match g.format()? {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut s = String::from("d,bracket_lower,bracket_upper,N,mueller,mueller_stderr,optimized_N,normalized,above_lower\n");
            for r in &rows {
                for (n, e) in &r.mueller {
                    s += &format!(
                        "{},{},{},{},{},{},{},{},{}\n",
                        r.d, r.bracket.lower, r.bracket.upper, n, e.mean, e.stderr, r.optimized_n, r.normalized, r.above_lower
                    );
                }
            }
            s
        }
    };
    emit(g, &out)
}

fn run_mueller(g: &Global, a: &MuellerArgs) -> Result<()> {
    let d = g.one_d()?;
    let ns = if g.n.is_empty() { vec![16, 32, 64, 128] } else { g.n.clone() };
    #[derive(Serialize)]
    struct Row {
        d: usize,
        #[serde(rename = "N")]
        n: usize,
        estimate: ballapprox::metrics::MCEstimate,
        limit: f64,
    }
    let rows = ns
        .iter()
        .map(|&n| {
            Ok(Row {
                d,
                n,
                estimate: mueller_estimate(d, n, a.trials, g.samples.unwrap_or(20_000), g.seed)?,
                limit: bounds::muller_limit(d),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    emit(g, &json(&rows)?)
}

fn random_instances(g: &Global, kinds: &[GenKind], count: usize) -> Result<Vec<(String, VPolytope)>> {
    let ds = if g.d.is_empty() { vec![2, 3] } else { g.d.clone() };
    let mut out = Vec::new();
    for &d in &ds {
        let ns = if g.n.is_empty() { vec![2 * d + 2, 4 * d + 4] } else { g.n.clone() };
        for &n in &ns {
            for &kind in kinds {
                for i in 0..count {
                    let seed = harness::instance_seed(g.seed, d, n, i);
                    let p = generate(&GenSpec::random(kind, d, n, seed))?;
                    out.push((format!("{kind}:d{d}:n{n}:{i}"), p));
                }
            }
        }
    }
    Ok(out)
}

fn run_conjecture(g: &Global, a: &ConjectureArgs) -> Result<()> {
    let instances = if a.input.is_empty() {
        random_instances(g, &[GenKind::CircumscribedTangent], a.instances)?
    } else {
        a.input
            .iter()
            .map(|p| Ok((p.display().to_string(), read_polytope(p, g.tol)?)))
            .collect::<Result<_>>()?
    };
    let rows = study_conjecture(&instances, &a.c1, g.samples.unwrap_or(100_000), g.seed)?;
    #[derive(Serialize)]
    struct Report {
        rows: Vec<harness::ConjectureRow>,
        minima: Vec<(usize, f64, f64)>,
    }
    let out = match g.format()? {
        Format::Json => json(&Report {
            minima: conjecture_minima(&rows),
            rows,
        })?,
        Format::Csv => {
            let mut s = String::from("d,N,instance,c1,t,ratio,stderr\n");
            for r in &rows {
                s += &format!("{},{},{},{},{},{},{}\n", r.d, r.n, r.instance, r.c1, r.t, r.ratio.mean, r.ratio.stderr);
            }
            s
        }
    };
    emit(g, &out)
}

fn run_hsw(g: &Global, a: &HswArgs) -> Result<()> {
    let instances = if a.input.is_empty() {
        let kinds = if a.generators.is_empty() {
            vec![GenKind::RandomInscribed, GenKind::CircumscribedTangent]
        } else {
            parse_generators(&a.generators)?
        };
        random_instances(g, &kinds, a.instances)?
    } else {
        a.input
            .iter()
            .map(|p| Ok((p.display().to_string(), read_polytope(p, g.tol)?)))
            .collect::<Result<_>>()?
    };
    let report = report_hsw_constants(&instances, g.samples.unwrap_or(100_000), g.seed);
    let out = match g.format()? {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut s = String::from("d,M,instance,delta_s,stderr,surface_area,c_hat,flag\n");
            for r in &report.rows {
                s += &format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.d,
                    r.m,
                    r.instance,
                    r.delta_s,
                    r.stderr,
                    r.surface_area,
                    r.c_hat,
                    r.flag.as_deref().unwrap_or("")
                );
            }
            s
        }
    };
    emit(g, &out)
}

fn run(cli: &Cli) -> Result<bool> {
    let g = &cli.global;
    if let Some(t) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match &cli.command {
        Command::Certify(a) => return run_certify(g, a),
        Command::Bounds(a) => run_bounds(g, a)?,
        Command::Fixtures(a) => run_fixtures(g, a)?,
        Command::Optimize(a) => run_optimize(g, a)?,
        Command::Div(a) => run_div(g, a)?,
        Command::Mueller(a) => run_mueller(g, a)?,
        Command::Conjecture(a) => run_conjecture(g, a)?,
        Command::Hsw(a) => run_hsw(g, a)?,
    }
    Ok(false)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
