use criterion::{black_box, criterion_group, criterion_main, Criterion};

use csqed::{
    bessel_j, compute_coefficients, evolve, response_tensors, werner_state, BesselOrder, Method,
};
use csqed_bench::{
    default_control, evolution, isotropic_pair, reference_geometry, wide_geometry,
};

fn bench_bessel(c: &mut Criterion) {
    let mut group = c.benchmark_group("bessel_j");
    for &(nu, x) in &[(0.0, 0.7), (2.0, 5.0), (13.5, 4.2), (40.0, 12.0)] {
        let order = BesselOrder::new(nu).unwrap();
        group.bench_function(format!("nu{nu}_x{x}"), |b| {
            b.iter(|| bessel_j(black_box(order), black_box(x)).unwrap())
        });
    }
    group.finish();
}

fn bench_response(c: &mut Criterion) {
    let ctl = default_control();
    let mut group = c.benchmark_group("response_tensors");
    group.sample_size(20);
    group.bench_function("nu2_wr0.5_wl0.5", |b| {
        b.iter(|| response_tensors(black_box(&reference_geometry()), black_box(&ctl)).unwrap())
    });
    group.bench_function("nu2_wr8_wl0.5", |b| {
        b.iter(|| response_tensors(black_box(&wide_geometry()), black_box(&ctl)).unwrap())
    });
    group.finish();
}

fn bench_evolve(c: &mut Criterion) {
    let k = compute_coefficients(&reference_geometry(), &isotropic_pair(), &default_control())
        .unwrap();
    let init = werner_state(2.0 / 3.0).unwrap();
    let mut group = c.benchmark_group("evolve");
    group.sample_size(20);
    for (name, method) in [("exact", Method::Exact), ("rk4", Method::Rk4)] {
        let settings = evolution(method);
        group.bench_function(name, |b| {
            b.iter(|| evolve(black_box(&init), black_box(&k), black_box(&settings)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_bessel, bench_response, bench_evolve);
criterion_main!(benches);
