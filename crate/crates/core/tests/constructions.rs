use approx::assert_relative_eq;
use ballapprox::constructions::{mueller_estimate, MAX_DRAWS};
use ballapprox::metrics::sampling::sphere_point;
use ballapprox::{generate, Error, Fixture, GenKind, GenSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

#[test]
fn fixture_measures() {
    for d in 2..=5 {
        let df = d as f64;
        let s = generate(&GenSpec::fixture(Fixture::Simplex, d)).unwrap();
        assert_eq!(s.vertices().len(), d + 1);
        // regular simplex inscribed in the unit sphere
        let vol = (df + 1.0).powf((df + 1.0) / 2.0) / (factorial(d) * df.powf(df / 2.0));
        assert_relative_eq!(s.volume(), vol, max_relative = 1e-10);
        assert!(s.vertices().iter().all(|v| (v.norm() - 1.0).abs() < 1e-12));

        let c = generate(&GenSpec::fixture(Fixture::Cube, d)).unwrap();
        assert_relative_eq!(c.volume(), 2f64.powi(d as i32), max_relative = 1e-12);
        assert_relative_eq!(c.surface_area(), 2.0 * df * 2f64.powi(d as i32 - 1), max_relative = 1e-12);
        let x = generate(&GenSpec::fixture(Fixture::Cross, d)).unwrap();
        assert_relative_eq!(x.volume(), 2f64.powi(d as i32) / factorial(d), max_relative = 1e-12);
        assert_eq!(*x.fvector().last().unwrap(), 1 << d);
        assert_eq!(x.fvector()[0], 2 * d);

        let ic = generate(&GenSpec::fixture(Fixture::InscribedCube, d)).unwrap();
        assert_relative_eq!(ic.max_vertex_norm(), 1.0, max_relative = 1e-12);
        let cc = generate(&GenSpec::fixture(Fixture::CircumscribedCube, d)).unwrap();
        assert_relative_eq!(cc.min_facet_offset(), 1.0, max_relative = 1e-12);
    }
    let h = generate(&GenSpec::fixture(Fixture::RegularNgon(6), 2)).unwrap();
    assert_relative_eq!(h.surface_area(), 6.0, max_relative = 1e-12);
    assert!(matches!(
        generate(&GenSpec::fixture(Fixture::RegularNgon(6), 3)),
        Err(Error::UnsupportedDimension(3))
    ));
}

#[test]
fn spatial_random_example() {
    let p = generate(&GenSpec::random(GenKind::RandomInscribed, 3, 20, 7)).unwrap();
    assert!(p.vertices().iter().all(|v| (v.norm() - 1.0).abs() < 1e-12));
    assert!(p.fvector()[0] <= 20);
    assert_eq!(p.lattice().euler_characteristic(), 2);
}

#[test]
fn jitter_keeps_vertices_on_the_sphere() {
    let spec = GenSpec {
        jitter: Some(0.05),
        seed: 3,
        ..GenSpec::fixture(Fixture::InscribedCube, 3)
    };
    let p = generate(&spec).unwrap();
    assert!(p.vertices().iter().all(|v| (v.norm() - 1.0).abs() < 1e-12));
    let plain = generate(&GenSpec::fixture(Fixture::InscribedCube, 3)).unwrap();
    assert_ne!(p.volume(), plain.volume());
}

#[test]
fn too_few_tangent_planes_cannot_be_bounded() {
    // d planes never bound a region, so every draw is rejected
    let r = generate(&GenSpec::random(GenKind::CircumscribedTangent, 3, 3, 1));
    assert_eq!(r.unwrap_err(), Error::UnboundedDraw(MAX_DRAWS));
}

#[test]
fn single_trial_is_reproducible() {
    let a = mueller_estimate(2, 16, 1, 0, 99).unwrap();
    let b = mueller_estimate(2, 16, 1, 0, 99).unwrap();
    assert_eq!(a, b);
    let c = mueller_estimate(2, 16, 1, 0, 100).unwrap();
    assert_ne!(a.mean, c.mean);
}

fn kind() -> impl Strategy<Value = GenKind> {
    prop_oneof![
        Just(GenKind::RandomInscribed),
        Just(GenKind::CircumscribedTangent),
        Just(GenKind::PolarOfInscribed)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_instances_are_nested(k in kind(), d in 2usize..=5, extra in 1usize..20, seed in any::<u64>()) {
        let n = d + extra + if k == GenKind::RandomInscribed { 0 } else { d };
        let spec = GenSpec::random(k, d, n, seed);
        let p = generate(&spec).unwrap();
        let again = generate(&spec).unwrap();
        prop_assert_eq!(p.vertices(), again.vertices());
        prop_assert_eq!(p.lattice().euler_characteristic(), p.lattice().euler_target());
        match k {
            GenKind::RandomInscribed => {
                prop_assert!(p.max_vertex_norm() <= 1.0 + 1e-12);
                prop_assert!(p.fvector()[0] <= n);
            }
            _ => {
                prop_assert!(p.facets().iter().all(|f| (f.offset - 1.0).abs() < 1e-9));
                prop_assert!(p.fvector()[d - 1] <= n);
            }
        }
    }

    #[test]
    fn polar_of_inscribed_is_pointwise_dual(d in 2usize..=4, extra in 2usize..16, seed in any::<u64>()) {
        let n = 2 * d + extra;
        let p = generate(&GenSpec::random(GenKind::RandomInscribed, d, n, seed)).unwrap();
        prop_assume!(p.origin_interior());
        let q = p.polar_dual().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let u = sphere_point(&mut rng, d);
            prop_assert!(p.support(&u) <= 1.0 + 1e-12);
            prop_assert!(q.radial(&u).unwrap() >= 1.0 - 1e-9);
        }
    }
}

/// `N² (2 - E w(P_N))` for N uniform points on the circle. A hull edge spans a
/// gap `2πB` with `B ~ Beta(1, N-1)`, so `E perimeter = N E[2 sin(πB)]`;
/// the expectation is integrated by Simpson's rule.
fn planar_mueller_exact(n: usize) -> f64 {
    let nf = n as f64;
    let f = |b: f64| 2.0 * (std::f64::consts::PI * b).sin() * (nf - 1.0) * (1.0 - b).powi(n as i32 - 2);
    let steps = 20_000;
    let h = 1.0 / steps as f64;
    let mut s = f(0.0) + f(1.0);
    for i in 1..steps {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    let mean_edge = s * h / 3.0;
    nf * nf * (2.0 - nf * mean_edge / std::f64::consts::PI)
}

#[test]
fn planar_random_hulls_match_the_exact_expectation() {
    for n in [16, 64] {
        let want = planar_mueller_exact(n);
        let e = mueller_estimate(2, n, 4000, 0, 17).unwrap();
        assert!((e.mean - want).abs() <= 3.5 * e.stderr, "N={n}: {} ± {} vs {want}", e.mean, e.stderr);
    }
    // the finite-N values climb toward 2π²
    let seq: Vec<f64> = [16, 32, 64, 128, 256].iter().map(|&n| planar_mueller_exact(n)).collect();
    assert!(seq.windows(2).all(|w| w[0] < w[1]));
    assert!((seq[3] - 19.27386).abs() < 1e-4);
    assert!(seq[4] < 2.0 * std::f64::consts::PI.powi(2));
}
