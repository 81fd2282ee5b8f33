use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use slice_bergman::kernels::{ball_kernel, bergman_fueter_kernel, halfspace_kernel, BallForm, HalfSpaceForm};
use slice_bergman::quadrature::{build_rule, slice_norm_sq, Region, RuleParams, WeightId};
use slice_bergman::transforms::{bergman_fueter_transform, bf_default_params, fueter_contour_transform, reproduce};
use slice_bergman::{DomainId, Quaternion, SliceFunction, UnitImaginary};

fn kernels(c: &mut Criterion) {
    let q = Quaternion::new(0.1, -0.2, 0.3, 0.15);
    let r = Quaternion::new(0.25, 0.1, -0.05, 0.3);
    let h = Quaternion::new(0.7, 0.4, -1.1, 0.2);
    let s = Quaternion::new(1.3, -0.6, 0.2, 0.9);
    let mut g = c.benchmark_group("kernel");
    g.bench_function("ball_I", |b| b.iter(|| ball_kernel(black_box(q), black_box(r), BallForm::I)));
    g.bench_function("ball_II", |b| b.iter(|| ball_kernel(black_box(q), black_box(r), BallForm::II)));
    g.bench_function("half_A", |b| b.iter(|| halfspace_kernel(black_box(h), black_box(s), HalfSpaceForm::A)));
    g.bench_function("half_B", |b| b.iter(|| halfspace_kernel(black_box(h), black_box(s), HalfSpaceForm::B)));
    g.bench_function("bergman_fueter", |b| b.iter(|| bergman_fueter_kernel(black_box(q), black_box(r))));
    g.finish();
}

fn rules(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_rule");
    for n in [32usize, 64, 128] {
        g.bench_with_input(BenchmarkId::new("disk", n), &n, |b, &n| {
            b.iter(|| build_rule(Region::Disk { radius: 1.0 }, n, 2 * n))
        });
    }
    g.finish();
}

fn transforms(c: &mut Criterion) {
    let f = SliceFunction::monomial(4);
    let p = Quaternion::new(0.2, -0.1, 0.3, 0.25);
    let u = UnitImaginary::new(0.3, -0.2, 1.0).unwrap();
    let mut g = c.benchmark_group("transform");
    g.sample_size(20);
    g.bench_function("reproduce_ball_64x128", |b| {
        b.iter(|| reproduce(&f, black_box(p), DomainId::UnitBall, u, &RuleParams::default()))
    });
    g.bench_function("reproduce_half_64x128", |b| {
        let x = Quaternion::new(0.8, 0.1, -0.3, 0.2);
        b.iter(|| reproduce(&f, black_box(x), DomainId::HalfSpace, u, &RuleParams::default()))
    });
    g.bench_function("bf_area_96x192", |b| b.iter(|| bergman_fueter_transform(&f, black_box(p), u, &bf_default_params())));
    g.bench_function("fueter_contour_256", |b| b.iter(|| fueter_contour_transform(&f, black_box(p), u, 0.8, 256)));
    g.bench_function("slice_norm_rho_64x128", |b| {
        b.iter(|| slice_norm_sq(&f, DomainId::UnitBall, u, WeightId::Rho, false, &RuleParams::default()))
    });
    g.finish();
}

criterion_group!(benches, kernels, rules, transforms);
criterion_main!(benches);
