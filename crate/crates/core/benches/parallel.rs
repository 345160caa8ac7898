use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dunkl_core::verify::run_suite;
use dunkl_core::{int, ratio, AppellTables, DunklContext, Strategy, Suite, VerifyConfig};

fn contexts() -> Vec<(&'static str, DunklContext)> {
    vec![
        (
            "B_2",
            DunklContext::from_catalog("B", 2, vec![int(1), ratio(1, 2)]).unwrap(),
        ),
        ("A_2", DunklContext::from_catalog("A", 3, vec![ratio(3, 4)]).unwrap()),
    ]
}

fn strategies() -> Vec<Strategy> {
    if Strategy::available() == Strategy::Parallel {
        vec![Strategy::Sequential, Strategy::Parallel]
    } else {
        vec![Strategy::Sequential]
    }
}

fn appell_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("appell_tables");
    group.sample_size(10);
    let t = ratio(1, 2);
    for (label, ctx) in contexts() {
        // warm the per-degree caches so only the table work is timed
        AppellTables::generate(&ctx, 5, &t, Strategy::Sequential).unwrap();
        for s in strategies() {
            group.bench_with_input(BenchmarkId::new(format!("{s:?}"), label), &s, |b, &s| {
                b.iter(|| AppellTables::generate(&ctx, 5, &t, s).unwrap())
            });
        }
    }
    group.finish();
}

fn biorthogonality(c: &mut Criterion) {
    let mut group = c.benchmark_group("biorthogonality");
    group.sample_size(10);
    for (label, ctx) in contexts() {
        for s in strategies() {
            let mut cfg = VerifyConfig::new(4, ratio(1, 4));
            cfg.strategy = s;
            run_suite(&ctx, Suite::Biorthogonality, &cfg).unwrap();
            group.bench_with_input(BenchmarkId::new(format!("{s:?}"), label), &cfg, |b, cfg| {
                b.iter(|| run_suite(&ctx, Suite::Biorthogonality, cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, appell_tables, biorthogonality);
criterion_main!(benches);
