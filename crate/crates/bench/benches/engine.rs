use std::hint::black_box;

use algmat::exactlin::rank_mod_p;
use algmat::matroid::matroid_union;
use algmat::terracini::{JoinAnalysis, MatroidComputationConfig};
use algmat_bench::{laface_secant, sym_secant_jacobian, veronese_secant};
use criterion::{criterion_group, criterion_main, Criterion};

fn rank(c: &mut Criterion) {
    let m = sym_secant_jacobian().unwrap();
    c.bench_function("rank_mod_p 24x36", |b| b.iter(|| rank_mod_p(black_box(&m))));
}

fn union(c: &mut Criterion) {
    let cfg = MatroidComputationConfig::with_seed(0);
    let a = JoinAnalysis::new(veronese_secant(3).unwrap(), cfg).unwrap();
    let summands = a.summand_matroids().to_vec();
    c.bench_function("union bases 2M(veronese(2,3))", |b| {
        b.iter(|| {
            matroid_union(black_box(&summands))
                .unwrap()
                .base_count()
                .unwrap()
        })
    });
}

fn enumeration(c: &mut Criterion) {
    let join = laface_secant().unwrap();
    c.bench_function("join bases p1xp1_23 2-secant", |b| {
        b.iter(|| {
            let a =
                JoinAnalysis::new(join.clone(), MatroidComputationConfig::with_seed(0)).unwrap();
            a.join_matroid().unwrap().base_count().unwrap()
        })
    });
    c.bench_function("union check veronese(2,3) 2-secant", |b| {
        let join = veronese_secant(3).unwrap();
        b.iter(|| {
            let a =
                JoinAnalysis::new(join.clone(), MatroidComputationConfig::with_seed(0)).unwrap();
            a.union_check().unwrap().missing_bases.len()
        })
    });
}

criterion_group! {
    name = engine;
    config = Criterion::default().sample_size(10);
    targets = rank, union, enumeration
}
criterion_main!(engine);
