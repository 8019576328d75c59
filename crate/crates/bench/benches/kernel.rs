use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use ztk_bench::corpus_env;
use ztk_core::checker::{convertible, normalize, Context, Environment, TruncMode};
use ztk_core::corpus::{builtin, load_builtin};
use ztk_core::testkit::{encode, gen_z_expr, TermGen, ZExpr};

fn corpus_check(c: &mut Criterion) {
    let mut g = c.benchmark_group("corpus_check");
    g.sample_size(10);
    for tier in [2u8, 3, 4] {
        let files = builtin::files_up_to(tier);
        g.bench_with_input(BenchmarkId::new("tiers_up_to", tier), &files, |b, files| {
            b.iter(|| assert!(load_builtin(TruncMode::Jne, files).is_ok()))
        });
    }
    g.finish();
}

fn integer_arithmetic(c: &mut Criterion) {
    let env = corpus_env(2);
    let ctx = Context::new();
    let mut g = c.benchmark_group("normalize_z");
    for n in [10i64, 100, 400] {
        let t = encode(&ZExpr::plus(ZExpr::Lit(n), ZExpr::neg(ZExpr::Lit(n / 2)))).unwrap();
        g.bench_with_input(BenchmarkId::new("plus_neg", n), &t, |b, t| {
            b.iter(|| normalize(&env, &ctx, black_box(t)))
        });
    }
    let mixed: Vec<_> = (0..50).map(|s| encode(&gen_z_expr(s, 30)).unwrap()).collect();
    g.bench_function("generated_size_30", |b| {
        b.iter(|| mixed.iter().map(|t| normalize(&env, &ctx, t)).count())
    });
    g.finish();
}

fn conversion(c: &mut Criterion) {
    let env = Environment::new(TruncMode::Jne);
    let samples: Vec<_> = (0..100).map(|s| TermGen::new(s).sample(40)).collect();
    let nfs: Vec<_> = samples.iter().map(|s| normalize(&env, &s.ctx, &s.term)).collect();
    c.bench_function("convertible_with_normal_form", |b| {
        b.iter(|| {
            samples
                .iter()
                .zip(&nfs)
                .filter(|(s, nf)| convertible(&env, &s.ctx, &s.term, nf))
                .count()
        })
    });
}

criterion_group!(benches, corpus_check, integer_arithmetic, conversion);
criterion_main!(benches);
