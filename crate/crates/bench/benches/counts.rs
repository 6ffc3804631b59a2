use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dwork_bench::{generic_lambda, prime_context};
use dwork_core::{oracle, DecomposeOptions, DworkCounter};

fn brute_vs_formulas(c: &mut Criterion) {
    let mut group = c.benchmark_group("quintic");
    group.sample_size(10);
    for p in [11u64, 31] {
        let ctx = prime_context(p);
        let lam = generic_lambda(&ctx);
        let counter = DworkCounter::new(&ctx, 5).unwrap();
        group.bench_with_input(BenchmarkId::new("brute_all_lambda", p), &p, |b, _| {
            b.iter(|| oracle::brute_projective_counts(ctx.field(), 5))
        });
        group.bench_with_input(BenchmarkId::new("threefold", p), &p, |b, _| {
            b.iter(|| counter.threefold(lam).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("koblitz", p), &p, |b, _| {
            b.iter(|| counter.koblitz(lam).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("decompose", p), &p, |b, _| {
            b.iter(|| counter.decompose(lam, DecomposeOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, brute_vs_formulas);
criterion_main!(benches);
