use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use repstab_bench::{class_representatives, squarefree_polys};
use repstab_core::fimod::{generation_profile, PolyHomogeneous};
use repstab_core::fqstats::factor_degree_stats;
use repstab_core::osconf::trace;
use repstab_core::symcore::{decompose, CharacterTable, ClassFunction};
use repstab_core::tori::tori_count_by_type;

fn character_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("character_table");
    for n in [8, 12, 16] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| CharacterTable::compute(black_box(n))));
    }
    g.finish();
    let regular = ClassFunction::regular(10);
    c.bench_function("decompose_regular_10", |b| b.iter(|| decompose(black_box(&regular)).unwrap()));
}

fn conf_traces(c: &mut Criterion) {
    let mut g = c.benchmark_group("conf_traces");
    g.sample_size(10);
    for (n, i) in [(8, 2), (9, 3), (10, 3)] {
        let reps = class_representatives(n);
        g.bench_with_input(BenchmarkId::new(format!("n{n}"), i), &i, |b, &i| {
            b.iter(|| reps.iter().map(|s| trace(n, i, s)).count())
        });
    }
    g.finish();
}

fn factorization(c: &mut Criterion) {
    let polys = squarefree_polys(5, 5);
    c.bench_function("factor_degree_stats_n5_q5", |b| {
        b.iter(|| polys.iter().map(|f| factor_degree_stats(f).unwrap().d.len()).sum::<usize>())
    });
}

fn tori(c: &mut Criterion) {
    c.bench_function("tori_count_by_type_n10", |b| b.iter(|| tori_count_by_type(black_box(10), 7).unwrap()));
}

fn fi_modules(c: &mut Criterion) {
    let mut g = c.benchmark_group("generation_profile");
    g.sample_size(10);
    g.bench_function("poly3_n6", |b| b.iter(|| generation_profile(&PolyHomogeneous::new(3, 6)).unwrap()));
    g.finish();
}

criterion_group!(benches, character_tables, conf_traces, factorization, tori, fi_modules);
criterion_main!(benches);
