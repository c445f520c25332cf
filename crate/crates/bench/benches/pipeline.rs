use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use frobenius_core::gwcomb::{run_selection, OrbifoldP1, SelectionBounds};
use frobenius_core::rotation::structure_residuals;
use frobenius_core::{builtin, canonical_frame, g2_from_rotation, rotation_data, Point, QDoubleSum};

fn point() -> Point {
    Point::new(vec![Complex64::new(0.3, 0.1), Complex64::new(-0.4, 0.0), Complex64::new(0.7, -0.2)])
}

fn pipeline(c: &mut Criterion) {
    let m = builtin::a3();
    let p = point();
    let rd = rotation_data(&m, &p).unwrap();
    c.bench_function("frame_a3", |b| b.iter(|| canonical_frame(black_box(&m), black_box(&p)).unwrap()));
    c.bench_function("rotation_a3", |b| b.iter(|| rotation_data(black_box(&m), black_box(&p)).unwrap()));
    c.bench_function("structure_a3", |b| b.iter(|| structure_residuals(&m, &p, black_box(&rd)).unwrap()));
    c.bench_function("g2_a3", |b| b.iter(|| g2_from_rotation(black_box(&rd), QDoubleSum::Over1440)));
}

fn selection(c: &mut Criterion) {
    let x = OrbifoldP1::new([2, 3, 3]).unwrap();
    let bounds = SelectionBounds {
        max_k: 3,
        max_d: 2,
        ..Default::default()
    };
    let mut g = c.benchmark_group("selection");
    g.sample_size(10);
    g.bench_function("p1_233_k3", |b| b.iter(|| run_selection(black_box(&x), &bounds).unwrap()));
    g.finish();
}

criterion_group!(benches, pipeline, selection);
criterion_main!(benches);
