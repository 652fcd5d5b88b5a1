use std::hint::black_box;

use ballapprox::constructions::{generate, GenKind, GenSpec};
use ballapprox::geometry::{Point, VPolytope, DEFAULT_TOL};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn sphere_points(d: usize, n: usize, seed: u64) -> Vec<Point> {
    generate(&GenSpec::random(GenKind::RandomInscribed, d, n, seed))
        .unwrap()
        .vertices()
        .to_vec()
}

fn hull(c: &mut Criterion) {
    let mut group = c.benchmark_group("convex_hull");
    for (d, n) in [(2, 128), (3, 32), (3, 128), (4, 30), (4, 64)] {
        let pts = sphere_points(d, n, 1);
        group.bench_with_input(BenchmarkId::new(format!("d{d}"), n), &pts, |b, pts| {
            b.iter(|| VPolytope::convex_hull(black_box(pts), DEFAULT_TOL).unwrap())
        });
    }
    group.finish();
}

fn lattice_and_measures(c: &mut Criterion) {
    let pts = sphere_points(4, 30, 2);
    c.bench_function("lattice_d4_n30", |b| {
        b.iter(|| {
            let p = VPolytope::convex_hull(&pts, DEFAULT_TOL).unwrap();
            black_box(p.fvector())
        })
    });
    c.bench_function("intrinsic_volumes_d4_n30", |b| {
        b.iter(|| {
            let p = VPolytope::convex_hull(&pts, DEFAULT_TOL).unwrap();
            black_box((1..4).map(|j| p.intrinsic_volume(j).unwrap()).sum::<f64>())
        })
    });
    let p = VPolytope::convex_hull(&pts, DEFAULT_TOL).unwrap();
    c.bench_function("polar_dual_d4_n30", |b| b.iter(|| black_box(&p).polar_dual().unwrap()));
}

criterion_group!(benches, hull, lattice_and_measures);
criterion_main!(benches);
