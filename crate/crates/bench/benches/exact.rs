use criterion::{black_box, criterion_group, criterion_main, Criterion};
use semistrong_core::coloring::ColoringKind;
use semistrong_core::exact::{count_colorings, decide, min_colors, SolveRequest};
use semistrong_core::generators;
use semistrong_core::reduction::{build_gadget, GadgetKind};

fn exact(c: &mut Criterion) {
    let c7 = generators::cycle(7).unwrap();
    c.bench_function("min_semistrong_c7", |b| {
        b.iter(|| black_box(min_colors(&SolveRequest::minimize(&c7, ColoringKind::Semistrong)).unwrap().value()))
    });

    let petersen = generators::petersen();
    c.bench_function("min_strong_petersen", |b| {
        b.iter(|| black_box(min_colors(&SolveRequest::minimize(&petersen, ColoringKind::Strong)).unwrap().value()))
    });
    c.bench_function("decide_proper_petersen_3", |b| {
        b.iter(|| black_box(decide(&SolveRequest::decide(&petersen, ColoringKind::Proper, 3)).unwrap().nodes))
    });

    let quartic = build_gadget(GadgetKind::Quartic, 4).unwrap().augmented();
    c.bench_function("enumerate_augmented_quartic_gadget", |b| {
        b.iter(|| black_box(count_colorings(&SolveRequest::enumerate(&quartic, ColoringKind::Semistrong, 4)).unwrap().count))
    });
}

criterion_group!(benches, exact);
criterion_main!(benches);
