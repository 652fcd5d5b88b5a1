use std::f64::consts::PI;

use approx::assert_relative_eq;
use ballapprox::bounds::KRange;
use ballapprox::harness::{
    certify, certify_polytope, conjecture_minima, conjecture_t, diagnose, hsw_constant, render, report_hsw_constants,
    study_conjecture, study_div, to_csv, to_json, CertifyOptions, DivConfig, Format, InstanceInfo, CSV_HEADER,
};
use ballapprox::{generate, CertRow, Error, Fixture, GenKind, GenSpec, Status, SweepConfig, VPolytope};

fn fixture(f: Fixture, d: usize) -> VPolytope {
    generate(&GenSpec::fixture(f, d)).unwrap()
}

fn small_sweep(seed: u64) -> SweepConfig {
    SweepConfig {
        d_list: vec![2, 3, 4],
        n_list: vec![6, 12],
        instances_per_cell: 2,
        samples: 4000,
        seed,
        ..SweepConfig::default()
    }
}

fn info(label: &str, n: usize) -> InstanceInfo {
    InstanceInfo {
        generator: label.into(),
        n,
        seed: 0,
    }
}

fn find<'a>(rows: &'a [CertRow], k: usize, metric: &str, provenance: &str) -> &'a CertRow {
    rows.iter()
        .find(|r| r.k == k && r.metric == metric && r.provenance == provenance)
        .unwrap_or_else(|| panic!("no {metric}/{provenance} row at k={k}"))
}

#[test]
fn planar_fixture_rows() {
    let rows = certify_polytope(&fixture(Fixture::RegularNgon(6), 2), &info("hexagon", 6), &[0], &CertifyOptions::default());
    let r = find(&rows, 0, "mw_deficit", "mw-inscribed");
    assert_eq!(r.m, 6);
    assert_eq!(r.status, Status::Pass);
    assert_relative_eq!(r.measured, 2.0 - 6.0 / PI, max_relative = 1e-12);
    assert_relative_eq!(r.bound, PI * PI / 2304.0, max_relative = 1e-12);
    assert!((r.ratio - 21.04).abs() < 0.01);

    let rows = certify_polytope(&fixture(Fixture::CircumscribedCube, 2), &info("square", 4), &[1], &CertifyOptions::default());
    let r = find(&rows, 1, "vol_excess", "vol-circumscribed");
    assert_eq!(r.status, Status::Pass);
    assert_relative_eq!(r.measured, 4.0 - PI, max_relative = 1e-12);
    assert_relative_eq!(r.bound, PI.powi(3) / 1024.0, max_relative = 1e-12);
}

#[test]
fn spatial_edges_take_both_routes() {
    let p = generate(&GenSpec::random(GenKind::RandomInscribed, 3, 20, 1)).unwrap();
    let rows = certify_polytope(&p, &info("random_inscribed", 20), &[1], &CertifyOptions::default());
    let mw = find(&rows, 1, "mw_deficit", "mw-inscribed");
    assert!(mw.valid);
    assert_eq!(mw.m, p.fvector()[1]);
    let polar = rows.iter().find(|r| r.metric == "vol_excess_polar").unwrap();
    assert!(polar.valid);
    assert_eq!(polar.m, p.fvector()[1]);
    assert_eq!(polar.status, Status::Pass);
}

#[test]
fn routing_and_face_counts() {
    let rows = certify(&small_sweep(3)).unwrap();
    assert!(!rows.is_empty());
    for r in &rows {
        if r.metric == "generate" {
            continue;
        }
        if r.metric == "mw_deficit" || r.provenance.ends_with("-inscribed") && r.metric.starts_with("delta") {
            assert!(KRange::VertexSide.contains(r.d, r.k), "{r:?}");
        }
        if r.metric.starts_with("vol_excess") || r.metric == "symdiff" || r.provenance.contains("circumscribed") && r.metric != "hausdorff" {
            assert!(KRange::FacetSide.contains(r.d, r.k), "{r:?}");
        }
        if r.metric == "hausdorff" {
            let range = if r.provenance.ends_with("facets") { KRange::FacetSide } else { KRange::VertexSide };
            assert!(range.contains(r.d, r.k), "{r:?}");
        }
        assert!(r.k < r.d);
    }
    // every k gets at least one Hausdorff row per instance
    for d in [2, 3, 4] {
        for k in 0..d {
            assert!(rows.iter().any(|r| r.d == d && r.k == k && r.metric == "hausdorff"));
        }
    }
}

#[test]
fn face_counts_match_the_lattice() {
    let cfg = small_sweep(5);
    for &d in &cfg.d_list {
        for &n in &cfg.n_list {
            for &kind in &cfg.generators {
                for i in 0..cfg.instances_per_cell {
                    let seed = ballapprox::harness::instance_seed(cfg.seed, d, n, i);
                    let p = generate(&GenSpec::random(kind, d, n, seed)).unwrap();
                    let fv = p.fvector();
                    let ks: Vec<usize> = (0..d).collect();
                    let rows = certify_polytope(&p, &info(kind.name(), n), &ks, &CertifyOptions { samples: 2000, ..Default::default() });
                    for r in rows.iter().filter(|r| r.metric != "vol_excess_polar") {
                        assert_eq!(r.m, fv[r.k]);
                        if KRange::VertexSide.contains(d, r.k) {
                            assert!(fv[r.k] >= fv[0]);
                        }
                        if KRange::FacetSide.contains(d, r.k) {
                            assert!(fv[r.k] >= fv[d - 1]);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn sweep_has_no_failures() {
    let rows = certify(&small_sweep(0)).unwrap();
    let fails: Vec<&CertRow> = rows.iter().filter(|r| r.status == Status::Fail).collect();
    assert!(fails.is_empty(), "{fails:#?}");
    assert!(rows.iter().filter(|r| r.status == Status::Pass).count() > rows.len() / 4);
}

#[test]
fn reports_are_reproducible() {
    let a = to_csv(&certify(&small_sweep(9)).unwrap()).unwrap();
    let b = pool(3, || to_csv(&certify(&small_sweep(9)).unwrap()).unwrap());
    assert_eq!(a, b);
    let c = to_csv(&certify(&small_sweep(10)).unwrap()).unwrap();
    assert_ne!(a, c);
    assert_eq!(a.lines().next().unwrap(), CSV_HEADER.join(","));
}

fn pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn json_mirrors_csv() {
    let rows = certify(&SweepConfig {
        d_list: vec![2],
        n_list: vec![5],
        instances_per_cell: 1,
        samples: 2000,
        ..SweepConfig::default()
    })
    .unwrap();
    let json: serde_json::Value = serde_json::from_str(&to_json(&rows).unwrap()).unwrap();
    let arr = json.as_array().unwrap();
    assert_eq!(arr.len(), rows.len());
    for key in CSV_HEADER {
        assert!(arr[0].get(key).is_some(), "missing {key}");
    }
    let csv = render(&rows, Format::Csv).unwrap();
    assert_eq!(csv.lines().count(), rows.len() + 1);
    let sym = arr.iter().find(|r| r["metric"] == "symdiff").unwrap();
    assert!(sym["reference"].as_f64().is_some());
}

#[test]
fn sweep_config_errors() {
    let bad = |f: fn(&mut SweepConfig)| {
        let mut c = SweepConfig::default();
        f(&mut c);
        certify(&c).unwrap_err()
    };
    assert!(matches!(bad(|c| c.d_list.clear()), Error::Config(_)));
    assert!(matches!(bad(|c| c.d_list = vec![9]), Error::Config(_)));
    assert!(matches!(bad(|c| c.n_list = vec![3]), Error::Config(_)));
    assert!(matches!(bad(|c| c.generators = vec![GenKind::Fixture]), Error::Config(_)));
    assert!(matches!(bad(|c| c.wills_c = 1.5), Error::CInvalid(_)));
    let parsed: SweepConfig = serde_json::from_str(r#"{"d_list":[3],"generators":["random_inscribed"]}"#).unwrap();
    assert_eq!(parsed.d_list, vec![3]);
    assert_eq!(parsed.instances_per_cell, SweepConfig::default().instances_per_cell);
}

#[test]
fn diagnostics_on_fixtures() {
    for p in [
        fixture(Fixture::InscribedCube, 3),
        fixture(Fixture::CircumscribedCube, 3),
        fixture(Fixture::Cross, 4),
        fixture(Fixture::RegularNgon(12), 2),
    ] {
        let g = diagnose(&p, 20_000, 1);
        assert!(g.iso_chain_holds, "{:?}", g.iso_ratios);
        assert!(g.polarity_holds, "{:?}", g.polarity);
        assert!(g.polarity.is_some());
        assert!(g.sublevel_holds, "{:?}", g.sublevel);
    }
}

#[test]
fn div_study_config_errors() {
    let empty = DivConfig {
        d_list: Vec::new(),
        ..DivConfig::default()
    };
    assert!(matches!(study_div(&empty), Err(Error::Config(_))));
    let high = DivConfig {
        d_list: vec![7],
        ..DivConfig::default()
    };
    assert!(matches!(study_div(&high), Err(Error::Config(_))));
}

#[test]
fn div_study_small() {
    let cfg = DivConfig {
        d_list: vec![2],
        mueller_ns: vec![8, 16],
        trials: 20,
        optimized_n: 12,
        opt: ballapprox::OptConfig {
            iters: 600,
            restarts: 2,
            ..ballapprox::OptConfig::default()
        },
        ..DivConfig::default()
    };
    let rows = study_div(&cfg).unwrap();
    assert_eq!(rows.len(), 1);
    let r = &rows[0];
    assert_relative_eq!(r.bracket.lower, 1.0 / 27.0, max_relative = 1e-12);
    assert_relative_eq!(r.bracket.upper, 0.5, max_relative = 1e-12);
    assert_eq!(r.mueller.len(), 2);
    assert!(r.above_lower);
    // the regular 12-gon value, normalized: N² (2 - (N/π) sin(π/N) · 2 / 2) / (2π)²
    let n = 12.0f64;
    let regular = n * n * (2.0 - 2.0 * n / PI * (PI / n).sin()) / (2.0 * PI).powi(2);
    assert!(r.normalized >= regular - 1e-9);
    assert!(r.normalized < regular * 1.05);
}

#[test]
fn conjecture_examples() {
    let sq = fixture(Fixture::CircumscribedCube, 2);
    let label = vec![("square".to_string(), sq.clone())];
    let rows = study_conjecture(&label, &[1e-6, 0.5, 2.0, 1e3], 100_000, 3).unwrap();
    assert!((rows[0].ratio.mean - 8.0 / (2.0 * PI)).abs() < 1e-3);
    assert!(rows.windows(2).all(|w| w[1].ratio.mean <= w[0].ratio.mean + 3.0 * w[0].ratio.stderr));
    assert!(rows[3].t >= 2f64.sqrt() - 1.0);
    assert_eq!(rows[3].ratio.mean, 0.0);
    assert_relative_eq!(conjecture_t(&sq, 1.0), (8.0 / (16.0 * 2.0 * PI)).powi(2), max_relative = 1e-12);
    let minima = conjecture_minima(&rows);
    assert_eq!(minima.len(), 4);
    let inscribed = vec![("cross".to_string(), fixture(Fixture::Cross, 2))];
    assert!(matches!(study_conjecture(&inscribed, &[1.0], 10, 0), Err(Error::NotCircumscribed)));
}

#[test]
fn hsw_examples() {
    let sq = fixture(Fixture::CircumscribedCube, 2);
    let r = hsw_constant(&sq, 0, 0).unwrap();
    // Δ_s κ_1² M² / ∂P³ = (8 - 2π)·4·16/512
    assert_relative_eq!(r.c_hat, (8.0 - 2.0 * PI) * 64.0 / 512.0, max_relative = 1e-12);
    let ic = hsw_constant(&fixture(Fixture::InscribedCube, 3), 0, 0).unwrap();
    assert!(ic.c_hat > 0.0);
    let big = generate(&GenSpec {
        jitter: None,
        ..GenSpec::fixture(Fixture::Cube, 5)
    })
    .unwrap();
    assert!(matches!(hsw_constant(&big, 0, 0), Err(Error::ContainmentViolated { .. })));
    let report = report_hsw_constants(
        &[("square".into(), sq), ("cube5".into(), big), ("cross".into(), fixture(Fixture::Cross, 2))],
        0,
        0,
    );
    assert_eq!(report.rows.len(), 3);
    assert!(report.rows[1].flag.is_some());
    assert!(report.min.unwrap() <= report.median.unwrap());
}
