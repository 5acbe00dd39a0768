use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use beltlab_core::tiling::cover_counts;
use beltlab_core::{
    belt_decompose, belts, build_zonotope, canonical_tiling, verify_k_fold, FedorovClass,
    GeneratorSet, SamplePlan, Vec3, Verdict,
};

fn truncated_octahedron_gens() -> GeneratorSet {
    GeneratorSet::from_ints(&[
        [1, 1, 0],
        [1, -1, 0],
        [1, 0, 1],
        [1, 0, -1],
        [0, 1, 1],
        [0, 1, -1],
    ])
    .unwrap()
}

fn bench_build(c: &mut Criterion) {
    c.bench_function("build_zonotope/truncated_octahedron", |b| {
        b.iter_batched(
            truncated_octahedron_gens,
            build_zonotope,
            BatchSize::SmallInput,
        )
    });
}

fn bench_belts(c: &mut Criterion) {
    let z = build_zonotope(truncated_octahedron_gens());
    c.bench_function("belts/truncated_octahedron", |b| b.iter(|| belts(&z)));
    let belt = belts(&z).into_iter().next().unwrap();
    c.bench_function("belt_decompose/truncated_octahedron", |b| {
        b.iter(|| belt_decompose(&z, &belt))
    });
}

fn bench_cover(c: &mut Criterion) {
    let (z, ms) = canonical_tiling(&FedorovClass::RhombicDodecahedron).unwrap();
    let x = Vec3::new(
        beltlab_core::Rat::new(1, 7),
        beltlab_core::Rat::new(2, 7),
        beltlab_core::Rat::new(3, 7),
    );
    c.bench_function("cover_counts/rhombic_dodecahedron", |b| {
        b.iter(|| cover_counts(&z, &ms, &x))
    });
}

fn bench_verify(c: &mut Criterion) {
    let (z, ms) = canonical_tiling(&FedorovClass::TruncatedOctahedron).unwrap();
    let plan = SamplePlan::new(7, 50);
    c.bench_function("verify_k_fold/truncated_octahedron_50", |b| {
        b.iter(|| {
            let cert = verify_k_fold(&z, &ms, 1, &plan).unwrap();
            assert_eq!(cert.verdict, Verdict::Verified);
            cert
        })
    });
}

criterion_group!(benches, bench_build, bench_belts, bench_cover, bench_verify);
criterion_main!(benches);
