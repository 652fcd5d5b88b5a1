use std::f64::consts::PI;

use ballapprox::bounds::{bound_hausdorff, bound_mw_inscribed, bound_vol_circumscribed, HausdorffBranch};
use ballapprox::metrics::constants::unit_ball_volume;
use ballapprox::optimizer::{optimize, realize, Objective};
use ballapprox::{Error, OptConfig};

fn cfg(objective: Objective, iters: usize) -> OptConfig {
    OptConfig {
        objective,
        iters,
        ..OptConfig::default()
    }
}

#[test]
fn circumscribed_square() {
    let r = optimize(2, 4, &cfg(Objective::VolCircumscribed, 2000)).unwrap();
    assert!((r.objective_value - (4.0 - PI)).abs() < 1e-3, "{}", r.objective_value);
    assert_eq!(r.best.fvector(), vec![4, 4]);
}

#[test]
fn inscribed_hexagon() {
    let r = optimize(2, 6, &cfg(Objective::MwInscribed, 2000)).unwrap();
    assert!((2.0 - r.objective_value - 6.0 / PI).abs() < 1e-3);
}

#[test]
fn results_respect_the_lower_bounds() {
    for (d, n) in [(2, 8), (3, 12), (3, 20)] {
        let mw = optimize(d, n, &cfg(Objective::MwInscribed, 400)).unwrap();
        let f0 = mw.best.fvector()[0] as f64;
        assert!(mw.objective_value >= bound_mw_inscribed(d, f0).value);

        let vol = optimize(d, n, &cfg(Objective::VolCircumscribed, 400)).unwrap();
        let fd = vol.best.fvector()[d - 1] as f64;
        assert!(vol.objective_value >= bound_vol_circumscribed(d, fd).value);

        let h = optimize(d, n, &cfg(Objective::HausdorffInscribed, 400)).unwrap();
        let fd = h.best.fvector()[d - 1] as f64;
        let b = bound_hausdorff(d, fd, h.best.surface_area(), HausdorffBranch::InscFacets);
        assert!(h.objective_value >= b.value);
    }
}

#[test]
fn search_improves_on_its_start_and_stays_feasible() {
    for objective in [
        Objective::MwInscribed,
        Objective::VolCircumscribed,
        Objective::HausdorffInscribed,
        Objective::HausdorffCircumscribed,
    ] {
        let start = optimize(3, 10, &OptConfig { iters: 0, restarts: 1, objective, ..OptConfig::default() }).unwrap();
        let end = optimize(3, 10, &OptConfig { iters: 500, restarts: 1, objective, ..OptConfig::default() }).unwrap();
        assert_eq!(start.history[0], end.history[0]);
        assert!(end.objective_value < start.objective_value, "{objective}");
        let p = realize(&end.directions, objective).unwrap();
        assert_eq!(p.vertices(), end.best.vertices());
        if objective.inscribed() {
            assert!(end.best.max_vertex_norm() <= 1.0 + 1e-12);
        } else {
            assert!(end.best.facets().iter().all(|f| (f.offset - 1.0).abs() < 1e-9));
            assert!(end.best.volume() > unit_ball_volume(3));
        }
    }
}

#[test]
fn restarts_are_deterministic() {
    let c = cfg(Objective::MwInscribed, 200);
    let a = optimize(3, 12, &c).unwrap();
    let b = optimize(3, 12, &c).unwrap();
    assert_eq!(a.objective_value, b.objective_value);
    assert_eq!(a.seed_used, b.seed_used);
    assert_eq!(a.directions, b.directions);
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(optimize(2, 2, &OptConfig::default()), Err(Error::Config(_))));
    assert!(matches!(optimize(1, 4, &OptConfig::default()), Err(Error::UnsupportedDimension(1))));
    let zero = OptConfig {
        restarts: 0,
        ..OptConfig::default()
    };
    assert!(matches!(optimize(2, 6, &zero), Err(Error::Config(_))));
    assert!("simplex".parse::<Objective>().is_err());
    assert_eq!("vol_circumscribed".parse::<Objective>().unwrap(), Objective::VolCircumscribed);
}
