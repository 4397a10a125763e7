use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fixmat_core::{a_by_definition, a_by_diophantine, a_by_divisor_sum, a_table, DivisorSieve};

fn sieve(c: &mut Criterion) {
    c.bench_function("sieve 10^6", |b| {
        b.iter(|| DivisorSieve::new(black_box(1_000_000)))
    });
}

fn a_n(c: &mut Criterion) {
    let s = DivisorSieve::new(40_000);
    let mut group = c.benchmark_group("a_18007");
    group.bench_function("definition", |b| {
        b.iter(|| a_by_definition(black_box(18_007), &s).unwrap())
    });
    group.bench_function("diophantine", |b| {
        b.iter(|| a_by_diophantine(black_box(18_007)).unwrap())
    });
    group.bench_function("divsum", |b| {
        b.iter(|| a_by_divisor_sum(black_box(18_007), &s).unwrap())
    });
    group.finish();
    c.bench_function("a_table 10^5", |b| {
        b.iter(|| a_table(black_box(100_000)).values.len())
    });
}

criterion_group!(benches, sieve, a_n);
criterion_main!(benches);
