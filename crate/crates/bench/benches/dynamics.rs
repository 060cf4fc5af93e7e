use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use horoflow::groups::word_ball;
use horoflow::models::ProductModel;
use horoflow::{integrate_orbit, FlowKind, Lift, Model, ModelDescriptor, ModelId, MoebiusElement, TransversePoint};

fn model(id: ModelId) -> Model {
    Model::build(&ModelDescriptor { id, matrix: None, seed: 3 }).unwrap()
}

fn far_frame(k: usize) -> MoebiusElement {
    MoebiusElement::rotation(0.37 * k as f64)
        .compose(&MoebiusElement::geodesic(2.5))
        .compose(&MoebiusElement::rotation(0.11 * k as f64))
}

fn reduce(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce");
    for id in [ModelId::Octagon, ModelId::Modular] {
        let m = model(id);
        let lifts: Vec<Lift> = (0..64).map(|k| Lift::frame(far_frame(k), TransversePoint::Trivial)).collect();
        group.bench_function(BenchmarkId::from_parameter(id), |b| {
            b.iter(|| {
                for l in &lifts {
                    black_box(m.reduce(l).unwrap());
                }
            })
        });
    }
    let t = model(ModelId::T3A);
    group.bench_function("t3a_sol", |b| {
        b.iter(|| black_box(t.reduce(&Lift::Sol([3.7, -12.2, 5.4])).unwrap()))
    });
    group.finish();
}

fn orbits(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit_10k");
    let cases = [
        (ModelId::T3A, FlowKind::Sol3U { d_beta: 0.037 }),
        (ModelId::Octagon, FlowKind::HorocycleU { dt: 0.01 }),
        (ModelId::OctagonSo3, FlowKind::HorocycleU { dt: 0.01 }),
        (ModelId::Modular, FlowKind::GeodesicD { dt: 0.01 }),
    ];
    for (id, flow) in cases {
        let m = model(id);
        let kind = if id == ModelId::T3A { horoflow::LiftKind::Sol } else { horoflow::LiftKind::Frame };
        let start = m.origin(kind).unwrap();
        group.bench_function(BenchmarkId::new(id.to_string(), flow.name()), |b| {
            b.iter(|| black_box(integrate_orbit(&m, &start, flow, 10_000, 0).unwrap()))
        });
    }
    group.finish();
}

fn balls(c: &mut Criterion) {
    let octagon = ProductModel::octagon().group();
    let mut group = c.benchmark_group("word_ball");
    group.sample_size(10);
    for r in [2, 3, 4] {
        group.bench_function(BenchmarkId::new("octagon", r), |b| {
            b.iter(|| black_box(word_ball(&octagon, r).unwrap().len()))
        });
    }
    group.finish();
}

criterion_group!(benches, reduce, orbits, balls);
criterion_main!(benches);
